"""Finite step functions with exact evaluation, limits, variation and
the indicator-sum decomposition used by the closed-form integrators.

A step function is stored by its division nodes
``sigma_0 < ... < sigma_m`` (the endpoints included), one value per
node and one value per open piece ``(sigma_{k-1}, sigma_k)``.  All node
lookups compare floats exactly: nodes are data, not approximations.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass

from .core import Interval, RegulatedFunction, StepApproximation
from .errors import DomainError


class StepFunction(RegulatedFunction):
    """Piecewise-constant function with finitely many pieces.

    Construction merges every interior node whose value agrees with
    both neighbouring pieces, so equal functions get equal
    representations and ``==`` is decidable.
    """

    __slots__ = ("_nodes", "_node_values", "_interior_values")

    def __init__(self, interval: Interval, nodes, node_values, interior_values):
        ns = [float(x) for x in nodes]
        cs = [float(x) for x in node_values]
        ds = [float(x) for x in interior_values]
        if len(ns) < 2:
            raise DomainError("a step function needs at least the two endpoint nodes")
        if len(cs) != len(ns) or len(ds) != len(ns) - 1:
            raise DomainError(
                f"length mismatch: {len(ns)} nodes need {len(ns)} node values "
                f"and {len(ns) - 1} interior values, got {len(cs)} and {len(ds)}")
        if ns[0] != interval.a or ns[-1] != interval.b:
            raise DomainError(
                f"nodes must start at {interval.a!r} and end at {interval.b!r}, "
                f"got {ns[0]!r} and {ns[-1]!r}")
        for i in range(1, len(ns)):
            if not ns[i - 1] < ns[i]:
                raise DomainError(f"nodes not strictly increasing at index {i}")
        for x in cs + ds:
            if not math.isfinite(x):
                raise DomainError("step function values must be finite")
        # Canonical form: drop interior nodes invisible to the function.
        k = 1
        while k < len(ns) - 1:
            if cs[k] == ds[k - 1] == ds[k]:
                del ns[k], cs[k], ds[k]
            else:
                k += 1
        super().__init__(interval)
        self._nodes = tuple(ns)
        self._node_values = tuple(cs)
        self._interior_values = tuple(ds)

    @classmethod
    def constant(cls, interval: Interval, value: float) -> "StepFunction":
        return cls(interval, (interval.a, interval.b), (value, value), (value,))

    # -- representation -------------------------------------------------

    @property
    def nodes(self) -> tuple[float, ...]:
        return self._nodes

    @property
    def node_values(self) -> tuple[float, ...]:
        return self._node_values

    @property
    def interior_values(self) -> tuple[float, ...]:
        return self._interior_values

    @property
    def piece_count(self) -> int:
        return len(self._interior_values)

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return (self._interval == other._interval
                and self._nodes == other._nodes
                and self._node_values == other._node_values
                and self._interior_values == other._interior_values)

    def __hash__(self):
        return hash((self._interval, self._nodes, self._node_values, self._interior_values))

    def __repr__(self):
        return (f"StepFunction({self._interval!r}, nodes={self._nodes!r}, "
                f"node_values={self._node_values!r}, interior_values={self._interior_values!r})")

    # -- evaluation ------------------------------------------------------

    def value(self, t: float) -> float:
        self._interval.require(t)
        i = bisect_left(self._nodes, t)
        if i < len(self._nodes) and self._nodes[i] == t:
            return self._node_values[i]
        return self._interior_values[i - 1]

    def left_limit(self, t: float) -> float:
        if not self._interval.a < t <= self._interval.b:
            raise DomainError(f"left limit needs t in ({self._interval.a}, {self._interval.b}]")
        # Node hit and interior hit both resolve to the piece left of t.
        i = bisect_left(self._nodes, t)
        return self._interior_values[i - 1]

    def right_limit(self, t: float) -> float:
        if not self._interval.a <= t < self._interval.b:
            raise DomainError(f"right limit needs t in [{self._interval.a}, {self._interval.b})")
        i = bisect_left(self._nodes, t)
        if self._nodes[i] == t:
            return self._interior_values[i]
        return self._interior_values[i - 1]

    # -- exact norms -----------------------------------------------------

    def variation(self) -> float:
        """Total variation, exact: node-vs-piece oscillations summed."""
        cs, ds = self._node_values, self._interior_values
        return math.fsum(
            abs(ds[k] - cs[k]) + abs(cs[k + 1] - ds[k]) for k in range(len(ds)))

    def sup_norm(self) -> float:
        return max(max(abs(v) for v in self._node_values),
                   max(abs(v) for v in self._interior_values))

    @property
    def variation_bound(self) -> float:
        return self.variation()

    @property
    def sup_bound(self) -> float:
        return self.sup_norm()

    def jump_points(self) -> tuple[float, ...]:
        out = []
        m = self.piece_count
        for k, s in enumerate(self._nodes):
            left = k > 0 and self._node_values[k] != self._interior_values[k - 1]
            right = k < m and self._interior_values[k] != self._node_values[k]
            if left or right:
                out.append(s)
        return tuple(out)

    @property
    def is_step(self) -> bool:
        return True

    def approximate(self, eps: float) -> StepApproximation:
        if eps <= 0:
            raise DomainError(f"approximation tolerance must be positive, got {eps!r}")
        return StepApproximation(self, 0.0)

    # -- decomposition ----------------------------------------------------

    def decompose(self) -> "Decomposition":
        """Write f as

            c + sum_k c_k chi_(sigma_k, b] + sum_k d_k chi_[sigma_k, b]
              + d chi_[b]

        with c_k the right jumps and d_k the left jumps at the nodes.
        Zero-weight entries are dropped.
        """
        ns, cs, ds = self._nodes, self._node_values, self._interior_values
        m = self.piece_count
        plus = []
        for k in range(m):  # chi_(sigma_k, b], sigma_0 = a allowed
            w = ds[k] - cs[k]
            if w != 0.0:
                plus.append((ns[k], w))
        minus = []
        for k in range(1, m):  # chi_[sigma_k, b], interior nodes only
            w = cs[k] - ds[k - 1]
            if w != 0.0:
                minus.append((ns[k], w))
        return Decomposition(
            interval=self._interval,
            base=cs[0],
            plus_jumps=tuple(plus),
            minus_jumps=tuple(minus),
            endpoint=cs[m] - ds[m - 1],
        )

    # -- algebra -----------------------------------------------------------

    def _piece_values_on(self, merged: list[float]) -> list[float]:
        # Interior value of self on each cell of `merged`; needs
        # self's nodes to be a subset of `merged`.  Pure index walk, no
        # midpoint evaluation, so it is exact even for tiny cells.
        out = []
        i = 0
        for j in range(len(merged) - 1):
            u = merged[j]
            while self._nodes[i + 1] <= u:
                i += 1
            out.append(self._interior_values[i])
        return out

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = StepFunction.constant(self._interval, float(other))
        if not isinstance(other, StepFunction):
            return NotImplemented
        if other._interval != self._interval:
            raise DomainError("step functions live on different intervals")
        merged = sorted(set(self._nodes) | set(other._nodes))
        mine = self._piece_values_on(merged)
        theirs = other._piece_values_on(merged)
        return StepFunction(
            self._interval,
            merged,
            [self.value(x) + other.value(x) for x in merged],
            [u + v for u, v in zip(mine, theirs)],
        )

    __radd__ = __add__

    def __neg__(self):
        return StepFunction(
            self._interval, self._nodes,
            [-v for v in self._node_values],
            [-v for v in self._interior_values])

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            return self + (-float(other))
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, float)):
            return NotImplemented
        lam = float(scalar)
        return StepFunction(
            self._interval, self._nodes,
            [lam * v for v in self._node_values],
            [lam * v for v in self._interior_values])

    __rmul__ = __mul__


def indicator(interval: Interval, lo: float, hi: float, *,
              closed_left: bool, closed_right: bool) -> StepFunction:
    """Indicator of the sub-interval from lo to hi with the requested
    endpoint inclusions; ``lo == hi`` gives the single-point indicator
    (both ends must then be closed)."""
    if not (interval.a <= lo <= hi <= interval.b):
        raise DomainError(
            f"indicator bounds [{lo}, {hi}] outside [{interval.a}, {interval.b}]")
    if lo == hi and not (closed_left and closed_right):
        raise DomainError("an open or half-open single-point indicator is empty")

    def hit(t: float) -> bool:
        left_ok = lo < t or (closed_left and t == lo)
        right_ok = t < hi or (closed_right and t == hi)
        return left_ok and right_ok

    nodes = sorted({interval.a, interval.b, lo, hi})
    node_values = [1.0 if hit(x) else 0.0 for x in nodes]
    interior = []
    for x, y in zip(nodes, nodes[1:]):
        # The open piece (x, y) never straddles lo or hi.
        interior.append(1.0 if (x >= lo and y <= hi) else 0.0)
    return StepFunction(interval, nodes, node_values, interior)


@dataclass(frozen=True, slots=True)
class Decomposition:
    """Weights of the indicator components of a step function.

    ``plus_jumps`` lists ``(sigma, w)`` for ``w * chi_(sigma, b]``
    (right jumps; sigma = a allowed), ``minus_jumps`` lists weights on
    ``chi_[sigma, b]`` (left jumps; interior sigma only), ``endpoint``
    weighs ``chi_[b]``.
    """

    interval: Interval
    base: float
    plus_jumps: tuple[tuple[float, float], ...]
    minus_jumps: tuple[tuple[float, float], ...]
    endpoint: float

    def __post_init__(self):
        a, b = self.interval.a, self.interval.b
        for s, _ in self.plus_jumps:
            if not a <= s < b:
                raise DomainError(f"chi_(sigma, b] location {s!r} outside [{a}, {b})")
        for s, _ in self.minus_jumps:
            if not a < s < b:
                raise DomainError(f"chi_[sigma, b] location {s!r} outside ({a}, {b})")

    def value(self, t: float) -> float:
        self.interval.require(t)
        acc = self.base
        for s, w in self.plus_jumps:
            if t > s:
                acc += w
        for s, w in self.minus_jumps:
            if t >= s:
                acc += w
        if t == self.interval.b:
            acc += self.endpoint
        return acc

    def _piece_value(self, x: float) -> float:
        # Value on an open piece whose left end is the node x; both
        # strict and non-strict comparisons collapse to sigma <= x.
        acc = self.base
        for s, w in self.plus_jumps:
            if s <= x:
                acc += w
        for s, w in self.minus_jumps:
            if s <= x:
                acc += w
        return acc

    def to_step(self) -> StepFunction:
        pts = {self.interval.a, self.interval.b}
        pts.update(s for s, _ in self.plus_jumps)
        pts.update(s for s, _ in self.minus_jumps)
        nodes = sorted(pts)
        return StepFunction(
            self.interval,
            nodes,
            [self.value(x) for x in nodes],
            [self._piece_value(x) for x in nodes[:-1]],
        )


def step_from_jumps(interval: Interval, base: float = 0.0,
                    plus_jumps=(), minus_jumps=(), endpoint: float = 0.0) -> StepFunction:
    """Build the step function with the given indicator weights."""
    return Decomposition(
        interval=interval,
        base=float(base),
        plus_jumps=tuple((float(s), float(w)) for s, w in plus_jumps),
        minus_jumps=tuple((float(s), float(w)) for s, w in minus_jumps),
        endpoint=float(endpoint),
    ).to_step()
