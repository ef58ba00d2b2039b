"""Divisions, tagged partitions, gauges, and constructive generation of
gauge-fine partitions.

A division is a finite node set containing both endpoints; a partition
adds one tag per cell.  Tags come in two flavours: ``free`` tags may
sit anywhere in the closed cell (gauge-limit integrals), ``interior``
tags must be strictly inside (refinement-limit integrals).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .core import Interval
from .errors import DomainError, GaugeError, GaugeTooFineError
from .stepfun import StepFunction

TAG_FREE = "free"
TAG_INTERIOR = "interior"


@dataclass(frozen=True, slots=True)
class Division:
    """Strictly increasing nodes alpha_0 < ... < alpha_nu spanning the
    interval exactly."""

    interval: Interval
    points: tuple[float, ...]

    def __post_init__(self):
        pts = tuple(float(x) for x in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise DomainError("a division needs at least the two endpoints")
        if pts[0] != self.interval.a or pts[-1] != self.interval.b:
            raise DomainError(
                f"division must span [{self.interval.a}, {self.interval.b}] exactly")
        for i in range(1, len(pts)):
            if not pts[i - 1] < pts[i]:
                raise DomainError(f"division points not strictly increasing at index {i}")

    @property
    def nu(self) -> int:
        return len(self.points) - 1

    def cells(self) -> Iterator[tuple[float, float]]:
        return zip(self.points, self.points[1:])

    def refine(self, extra: Iterable[float]) -> "Division":
        extra = [float(x) for x in extra]
        for x in extra:
            self.interval.require(x)
        merged = sorted(set(self.points) | set(extra))
        return Division(self.interval, tuple(merged))


def refine(base: Division, extra: Iterable[float]) -> Division:
    """Union of a division with extra nodes (exact float identity)."""
    return base.refine(extra)


@dataclass(frozen=True, slots=True)
class Partition:
    """A division with one tag per cell."""

    division: Division
    tags: tuple[float, ...]
    mode: str = TAG_FREE

    def __post_init__(self):
        tags = tuple(float(x) for x in self.tags)
        object.__setattr__(self, "tags", tags)
        if self.mode not in (TAG_FREE, TAG_INTERIOR):
            raise DomainError(f"unknown tag mode {self.mode!r}")
        if len(tags) != self.division.nu:
            raise DomainError(
                f"{self.division.nu} cells need {self.division.nu} tags, got {len(tags)}")
        for (u, v), t in zip(self.division.cells(), tags):
            ok = u <= t <= v if self.mode == TAG_FREE else u < t < v
            if not ok:
                raise DomainError(f"tag {t!r} not valid for cell [{u}, {v}] in {self.mode} mode")

    @property
    def size(self) -> int:
        return self.division.nu

    def cells(self) -> Iterator[tuple[float, float, float]]:
        for (u, v), t in zip(self.division.cells(), self.tags):
            yield u, v, t


def interior_tags(division: Division, rule: str = "midpoint", seed: int | None = None) -> Partition:
    """Tag every cell strictly inside, by midpoints or reproducibly at
    random (``rule="random"`` with a seed)."""
    tags = []
    rng = random.Random(seed) if rule == "random" else None
    if rule not in ("midpoint", "random"):
        raise DomainError(f"unknown tag rule {rule!r}")
    for u, v in division.cells():
        mid = 0.5 * (u + v)
        if not u < mid < v:
            raise DomainError(f"cell [{u}, {v}] too narrow for a strictly interior tag")
        if rng is None:
            tags.append(mid)
        else:
            t = u + (v - u) * rng.uniform(0.05, 0.95)
            tags.append(t if u < t < v else mid)
    return Partition(division, tuple(tags), TAG_INTERIOR)


class Gauge:
    """Positive width function delta(t).

    The body is a constant, a piecewise-constant step function, or an
    arbitrary callable; finitely many pointwise overrides (exact float
    keys) sit on top.  Positivity of callable bodies can only be
    checked where they are evaluated, and is.
    """

    __slots__ = ("_body", "_overrides")

    def __init__(self, body, overrides: dict[float, float] | None = None):
        self._body = body
        self._overrides = dict(overrides) if overrides else {}

    @classmethod
    def constant(cls, delta: float) -> "Gauge":
        return cls(float(delta))

    @classmethod
    def from_step(cls, step: StepFunction) -> "Gauge":
        return cls(step)

    def with_overrides(self, mapping: dict[float, float]) -> "Gauge":
        merged = dict(self._overrides)
        merged.update(mapping)
        return Gauge(self._body, merged)

    def __call__(self, t: float) -> float:
        if t in self._overrides:
            d = self._overrides[t]
        elif isinstance(self._body, StepFunction):
            d = self._body.value(t)
        elif callable(self._body):
            d = self._body(t)
        else:
            d = self._body
        d = float(d)
        if not (math.isfinite(d) and d > 0.0):
            raise GaugeError(f"gauge must be positive and finite, got {d!r} at t={t!r}")
        return d


def is_fine(partition: Partition, gauge: Gauge) -> bool:
    """Whether every cell [u, v] sits inside [tag - delta, tag + delta]."""
    for u, v, t in partition.cells():
        d = gauge(t)
        if u < t - d or v > t + d:
            return False
    return True


def _generate_fine_cells(gauge: Gauge, u0: float, v0: float,
                         candidates: Callable[[float, float], tuple[float, ...]],
                         split: Callable[[float, float], float],
                         max_depth: int,
                         budget: list[int] | None = None) -> list[tuple[float, float, float]]:
    # Depth-first, left cell first, so the output arrives in order.
    out: list[tuple[float, float, float]] = []
    stack = [(u0, v0, 0)]
    while stack:
        u, v, depth = stack.pop()
        tag = None
        for t in candidates(u, v):
            d = gauge(t)
            if u >= t - d and v <= t + d:
                tag = t
                break
        if tag is not None:
            out.append((u, v, tag))
            if budget is not None:
                budget[0] -= 1
                if budget[0] < 0:
                    raise GaugeTooFineError("fine partition exceeds its cell budget")
            continue
        if depth >= max_depth:
            raise GaugeTooFineError(
                f"no fine cell found above depth {max_depth} near [{u!r}, {v!r}]")
        s = split(u, v)
        if not u < s < v:
            raise GaugeTooFineError(
                f"gauge demands cells below float resolution near {u!r}")
        stack.append((s, v, depth + 1))
        stack.append((u, s, depth + 1))
    return out


def _cells_to_partition(interval: Interval, cells: list[tuple[float, float, float]]) -> Partition:
    points = [cells[0][0]] + [v for _, v, _ in cells]
    tags = tuple(t for _, _, t in cells)
    return Partition(Division(interval, tuple(points)), tags, TAG_FREE)


def cousin_fine_partition(gauge: Gauge, interval: Interval, max_depth: int = 60) -> Partition:
    """A gauge-fine free-tagged partition by bisection: accept a cell
    when one of its endpoints or midpoint works as tag, else split at
    the midpoint.  Raises GaugeTooFineError past ``max_depth``."""
    cells = _generate_fine_cells(
        gauge, interval.a, interval.b,
        candidates=lambda u, v: (u, 0.5 * (u + v), v),
        split=lambda u, v: 0.5 * (u + v),
        max_depth=max_depth)
    return _cells_to_partition(interval, cells)


def random_fine_partition(gauge: Gauge, interval: Interval, seed: int,
                          max_depth: int = 60) -> Partition:
    """Like cousin_fine_partition with randomized split points and tag
    choices; deterministic per seed."""
    rng = random.Random(seed)

    def candidates(u: float, v: float) -> tuple[float, ...]:
        opts = [u, v, 0.5 * (u + v), u + (v - u) * rng.uniform(0.1, 0.9)]
        rng.shuffle(opts)
        return tuple(opts)

    def split(u: float, v: float) -> float:
        s = u + (v - u) * rng.uniform(0.35, 0.65)
        return s if u < s < v else 0.5 * (u + v)

    cells = _generate_fine_cells(
        gauge, interval.a, interval.b,
        candidates=candidates,
        split=split,
        max_depth=max_depth)
    return _cells_to_partition(interval, cells)
