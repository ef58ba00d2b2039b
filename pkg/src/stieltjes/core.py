"""Compact intervals and the regulated-function abstraction.

A function on ``[a, b]`` is *regulated* when it has finite one-sided
limits at every point.  Regulated functions are exactly the uniform
limits of finite step functions, and that characterization is what the
whole package leans on: every concrete family here can produce a step
approximant together with a certified uniform error bound, so integrals
of non-step functions come with honest error certificates instead of
estimates.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import TYPE_CHECKING, NamedTuple

from .errors import DomainError, VariationUnknownError

if TYPE_CHECKING:  # pragma: no cover
    from .stepfun import StepFunction


@dataclass(frozen=True, slots=True)
class Interval:
    """Compact interval ``[a, b]`` with ``a < b``.

    Degenerate and unbounded intervals are rejected at construction.
    """

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError(f"interval endpoints must be finite, got [{self.a}, {self.b}]")
        if not self.a < self.b:
            raise DomainError(f"degenerate interval [{self.a}, {self.b}]")

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.a + self.b)

    def contains(self, t: float) -> bool:
        return self.a <= t <= self.b

    def require(self, t: float) -> None:
        if not self.contains(t):
            raise DomainError(f"point {t!r} outside interval [{self.a}, {self.b}]")


class StepApproximation(NamedTuple):
    """A step function plus a certified uniform error bound for it."""

    step: "StepFunction"
    error: float


class RegulatedFunction(ABC):
    """A real function on a compact interval with one-sided limits
    everywhere.

    Subclasses must provide exact point evaluation, exact one-sided
    limits, a certified step approximant constructor, known jump
    locations, and certified norm data:

    * ``sup_bound``       -- an upper bound for ``sup |f|`` (exact for
                             step functions),
    * ``variation_bound`` -- an upper bound for the total variation, or
                             ``None`` when the family cannot certify one.

    Norm bounds must come from analytic data supplied at construction
    (Lipschitz constants, monotone direction, explicit jump lists);
    nothing in this package estimates norms from point samples.
    """

    __slots__ = ("_interval",)

    def __init__(self, interval: Interval):
        self._interval = interval

    @property
    def interval(self) -> Interval:
        return self._interval

    # -- evaluation ---------------------------------------------------

    @abstractmethod
    def value(self, t: float) -> float:
        """f(t) for t in [a, b]; DomainError outside."""

    def __call__(self, t: float) -> float:
        return self.value(t)

    @abstractmethod
    def left_limit(self, t: float) -> float:
        """f(t-) for t in (a, b]; DomainError at a or outside."""

    @abstractmethod
    def right_limit(self, t: float) -> float:
        """f(t+) for t in [a, b); DomainError at b or outside."""

    def left_jump(self, t: float) -> float:
        """f(t) - f(t-), with the convention of 0 at t = a."""
        if t == self._interval.a:
            self._interval.require(t)
            return 0.0
        return self.value(t) - self.left_limit(t)

    def right_jump(self, t: float) -> float:
        """f(t+) - f(t), with the convention of 0 at t = b."""
        if t == self._interval.b:
            self._interval.require(t)
            return 0.0
        return self.right_limit(t) - self.value(t)

    # -- certified data ------------------------------------------------

    @abstractmethod
    def approximate(self, eps: float) -> StepApproximation:
        """A step function within uniform distance eps, with the
        certified error achieved (may be smaller than eps).

        Raises ApproximationError when the family cannot certify eps.
        """

    @property
    @abstractmethod
    def variation_bound(self) -> float | None:
        """Certified upper bound for the total variation, or None."""

    @property
    @abstractmethod
    def sup_bound(self) -> float:
        """Certified upper bound for sup |f| over [a, b]."""

    @abstractmethod
    def jump_points(self) -> tuple[float, ...]:
        """Sorted locations where a one-sided jump is nonzero."""

    @property
    def is_step(self) -> bool:
        return False


def one_sided_limits(f: RegulatedFunction, t: float) -> tuple[float | None, float | None]:
    """(f(t-), f(t+)) with None in place of the missing limit at an
    interval endpoint."""
    f.interval.require(t)
    left = f.left_limit(t) if t > f.interval.a else None
    right = f.right_limit(t) if t < f.interval.b else None
    return left, right


def total_variation(f: RegulatedFunction) -> float:
    """The certified variation bound; exact for step functions.

    Raises VariationUnknownError when the family supplies none.
    """
    v = f.variation_bound
    if v is None:
        raise VariationUnknownError(
            f"{type(f).__name__} carries no certified variation bound")
    return v


def sup_norm(f: RegulatedFunction) -> float:
    """The certified sup-norm bound; exact for step functions."""
    return f.sup_bound


def bv_norm(f: RegulatedFunction) -> float:
    """|f(a)| + (total variation of f over [a, b])."""
    return abs(f.value(f.interval.a)) + total_variation(f)
