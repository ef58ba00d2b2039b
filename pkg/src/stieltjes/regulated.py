"""Built-in regulated-function families with certified step approximants.

Certification contract: each family derives its uniform error bounds
from analytic data supplied at construction -- Lipschitz constants per
piece, a monotone direction, explicit jump lists.  If that data is
wrong the certificates are wrong; nothing here estimates norms from
point samples.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass

from .core import Interval, RegulatedFunction, StepApproximation
from .errors import ApproximationError, DomainError
from .stepfun import StepFunction, step_from_jumps

# Hard ceiling on approximant size; past this the requested tolerance
# is treated as unreachable rather than allowed to exhaust memory.
MAX_APPROX_CELLS = 1 << 20


# ----------------------------------------------------------------------
# Formula catalog.  Each entry knows its own Lipschitz constant and a
# certified variation bound on any cell, which is what lets the DSL
# build functions whose certificates need no user-supplied constants.

@dataclass(frozen=True, slots=True)
class Affine:
    """t -> slope * t + intercept."""

    slope: float
    intercept: float = 0.0

    def __call__(self, t: float) -> float:
        return self.slope * t + self.intercept

    def lipschitz_on(self, u: float, v: float) -> float:
        return abs(self.slope)

    def variation_on(self, u: float, v: float) -> float:
        return abs(self.slope) * (v - u)

    def monotone_direction_on(self, u: float, v: float) -> float | None:
        return math.copysign(1.0, self.slope) if self.slope else 0.0


@dataclass(frozen=True, slots=True)
class Power:
    """t -> scale * t**exponent, exponent > 0.

    Non-integer exponents need u >= 0; exponents below 1 additionally
    need u > 0 to stay Lipschitz.
    """

    exponent: float
    scale: float = 1.0

    def __post_init__(self):
        if not self.exponent > 0:
            raise DomainError(f"power exponent must be positive, got {self.exponent!r}")

    def __call__(self, t: float) -> float:
        return self.scale * t ** self.exponent

    def _check_cell(self, u: float, v: float) -> None:
        integral = float(self.exponent).is_integer()
        if u < 0 and not integral:
            raise DomainError(f"t**{self.exponent} undefined left of 0")
        if self.exponent < 1 and u <= 0:
            raise DomainError(f"t**{self.exponent} is not Lipschitz at 0")

    def lipschitz_on(self, u: float, v: float) -> float:
        self._check_cell(u, v)
        e, s = self.exponent, abs(self.scale)
        if e >= 1:
            return s * e * max(abs(u), abs(v)) ** (e - 1)
        return s * e * u ** (e - 1)

    def variation_on(self, u: float, v: float) -> float:
        self._check_cell(u, v)
        if u >= 0:  # monotone on [0, inf)
            return abs(self.scale) * abs(v ** self.exponent - u ** self.exponent)
        return self.lipschitz_on(u, v) * (v - u)

    def monotone_direction_on(self, u: float, v: float) -> float | None:
        if u < 0:
            e = self.exponent
            if e.is_integer() and int(e) % 2 == 0:
                return None  # even power straddling 0
        return math.copysign(1.0, self.scale) if self.scale else 0.0


@dataclass(frozen=True, slots=True)
class SinWave:
    """t -> amplitude * sin(freq * t + phase)."""

    freq: float
    amplitude: float = 1.0
    phase: float = 0.0

    def __call__(self, t: float) -> float:
        return self.amplitude * math.sin(self.freq * t + self.phase)

    def lipschitz_on(self, u: float, v: float) -> float:
        return abs(self.amplitude * self.freq)

    def variation_on(self, u: float, v: float) -> float:
        # Upper bound; the exact arc count is not worth tracking.
        return self.lipschitz_on(u, v) * (v - u)

    def monotone_direction_on(self, u: float, v: float) -> float | None:
        return None


# ----------------------------------------------------------------------


class PiecewiseLipschitz(RegulatedFunction):
    """One Lipschitz-continuous formula per piece, arbitrary values at
    the piece boundaries.  Jumps happen at breakpoints and nowhere else.

    ``pieces[i]`` must be defined and Lipschitz with constant
    ``lipschitz[i]`` on the closed cell ``[breaks[i], breaks[i+1]]``;
    one-sided limits at a breakpoint are the adjacent pieces' values
    there.  Default node values splice continuously from the right.
    """

    __slots__ = ("_breaks", "_pieces", "_lipschitz", "_node_values",
                 "_variation", "_sup")

    def __init__(self, interval: Interval, breakpoints, pieces, lipschitz,
                 node_values=None, *, variation_bound: float | None = None,
                 sup_bound: float | None = None):
        bks = [float(x) for x in breakpoints]
        if bks[0] != interval.a or bks[-1] != interval.b:
            raise DomainError("breakpoints must run from interval start to end")
        for i in range(1, len(bks)):
            if not bks[i - 1] < bks[i]:
                raise DomainError(f"breakpoints not strictly increasing at index {i}")
        pieces = tuple(pieces)
        lipschitz = tuple(float(c) for c in lipschitz)
        if len(pieces) != len(bks) - 1 or len(lipschitz) != len(pieces):
            raise DomainError("need one piece and one Lipschitz constant per cell")
        for c in lipschitz:
            if not (math.isfinite(c) and c >= 0):
                raise DomainError(f"bad Lipschitz constant {c!r}")
        if node_values is None:
            node_values = [pieces[min(k, len(pieces) - 1)](bks[k]) for k in range(len(bks))]
        node_values = tuple(float(x) for x in node_values)
        if len(node_values) != len(bks):
            raise DomainError("need one node value per breakpoint")

        super().__init__(interval)
        self._breaks = tuple(bks)
        self._pieces = pieces
        self._lipschitz = lipschitz
        self._node_values = node_values

        if variation_bound is None:
            variation_bound = self._default_variation()
        if sup_bound is None:
            sup_bound = self._default_sup()
        self._variation = float(variation_bound)
        self._sup = float(sup_bound)

    @classmethod
    def from_formulas(cls, interval: Interval, breakpoints, formulas,
                      node_values=None) -> "PiecewiseLipschitz":
        """Build from catalog formulas, deriving Lipschitz constants and
        a tight variation bound analytically."""
        bks = [float(x) for x in breakpoints]
        formulas = tuple(formulas)
        if len(formulas) != len(bks) - 1:
            raise DomainError("need one formula per cell")
        lips = [fm.lipschitz_on(u, v) for fm, u, v in zip(formulas, bks, bks[1:])]
        self = cls(interval, bks, formulas, lips, node_values)
        pieces_var = math.fsum(
            fm.variation_on(u, v) for fm, u, v in zip(formulas, bks, bks[1:]))
        self._variation = pieces_var + self._jump_gap_total()
        return self

    # -- helpers ---------------------------------------------------------

    def _piece_index(self, t: float) -> int:
        # Index of the piece whose open cell contains t (t not a node).
        return bisect_left(self._breaks, t) - 1

    def _jump_gap_total(self) -> float:
        acc = 0.0
        last = len(self._breaks) - 1
        for k, t in enumerate(self._breaks):
            val = self._node_values[k]
            if k > 0:
                acc += abs(val - self._pieces[k - 1](t))
            if k < last:
                acc += abs(self._pieces[k](t) - val)
        return acc

    def _default_variation(self) -> float:
        pieces_var = math.fsum(
            c * (v - u) for c, u, v in zip(self._lipschitz, self._breaks, self._breaks[1:]))
        return pieces_var + self._jump_gap_total()

    def _default_sup(self) -> float:
        best = max(abs(v) for v in self._node_values)
        for p, c, u, v in zip(self._pieces, self._lipschitz, self._breaks, self._breaks[1:]):
            # Any t in [u, v] is within (v-u)/2 of the nearer endpoint.
            best = max(best, max(abs(p(u)), abs(p(v))) + 0.5 * c * (v - u))
        return best

    # -- RegulatedFunction interface --------------------------------------

    def value(self, t: float) -> float:
        self._interval.require(t)
        i = bisect_left(self._breaks, t)
        if i < len(self._breaks) and self._breaks[i] == t:
            return self._node_values[i]
        return self._pieces[i - 1](t)

    def left_limit(self, t: float) -> float:
        if not self._interval.a < t <= self._interval.b:
            raise DomainError(f"left limit needs t in ({self._interval.a}, {self._interval.b}]")
        i = bisect_left(self._breaks, t)
        return self._pieces[i - 1](t)

    def right_limit(self, t: float) -> float:
        if not self._interval.a <= t < self._interval.b:
            raise DomainError(f"right limit needs t in [{self._interval.a}, {self._interval.b})")
        i = bisect_left(self._breaks, t)
        if self._breaks[i] == t:
            return self._pieces[i](t)
        return self._pieces[i - 1](t)

    @property
    def variation_bound(self) -> float:
        return self._variation

    @property
    def sup_bound(self) -> float:
        return self._sup

    def jump_points(self) -> tuple[float, ...]:
        out = []
        last = len(self._breaks) - 1
        for k, t in enumerate(self._breaks):
            val = self._node_values[k]
            jumps = (k > 0 and self._pieces[k - 1](t) != val) or \
                    (k < last and self._pieces[k](t) != val)
            if jumps:
                out.append(t)
        return tuple(out)

    def approximate(self, eps: float) -> StepApproximation:
        """Uniform grid per piece with spacing <= eps / Lipschitz;
        constant midpoint values inside cells, exact values at nodes.
        Achieved error is max over pieces of Lipschitz * spacing / 2."""
        if eps <= 0:
            raise DomainError(f"approximation tolerance must be positive, got {eps!r}")
        counts = []
        for c, u, v in zip(self._lipschitz, self._breaks, self._breaks[1:]):
            n = max(1, math.ceil(c * (v - u) / eps)) if c > 0 else 1
            counts.append(n)
        total = sum(counts)
        if total > MAX_APPROX_CELLS:
            scale = total / MAX_APPROX_CELLS
            raise ApproximationError(
                f"tolerance {eps!r} needs {total} cells (limit {MAX_APPROX_CELLS})",
                best_error=eps * scale)
        nodes: list[float] = [self._breaks[0]]
        interior: list[float] = []
        err = 0.0
        for p, c, n, u, v in zip(self._pieces, self._lipschitz, counts,
                                 self._breaks, self._breaks[1:]):
            h = (v - u) / n
            err = max(err, 0.5 * c * h)
            for j in range(n):
                x = u + (j + 1) * h if j + 1 < n else v
                interior.append(p(u + (j + 0.5) * h))
                nodes.append(x)
        node_values = [self.value(x) for x in nodes]
        return StepApproximation(
            StepFunction(self._interval, nodes, node_values, interior), err)


class MonotoneFunction(RegulatedFunction):
    """Monotone function: a continuous monotone base plus finitely many
    explicit jumps, all pointing in the base's direction.

    Jumps are listed as ``(t, gap_before, gap_after)`` where
    ``gap_before = f(t) - f(t-)`` and ``gap_after = f(t+) - f(t)``.
    Approximants are certified by monotonicity alone: on any bisection
    cell the base stays between its endpoint values.
    """

    __slots__ = ("_base", "_jumps", "_jump_step", "_direction")

    def __init__(self, interval: Interval, base, jumps=()):
        super().__init__(interval)
        self._base = base
        jlist = sorted((float(t), float(pre), float(post)) for t, pre, post in jumps)
        plus, minus, endpoint = [], [], 0.0
        for t, pre, post in jlist:
            interval.require(t)
            if t == interval.a and pre != 0.0:
                raise DomainError("no left limit exists at the interval start")
            if t == interval.b and post != 0.0:
                raise DomainError("no right limit exists at the interval end")
            if t == interval.b:
                endpoint += pre
            elif pre != 0.0:
                minus.append((t, pre))
            if post != 0.0:
                plus.append((t, post))
        if plus or minus or endpoint:
            self._jump_step = step_from_jumps(
                interval, 0.0, plus_jumps=plus, minus_jumps=minus, endpoint=endpoint)
        else:
            self._jump_step = None
        self._jumps = tuple(jlist)

        span = base(interval.b) - base(interval.a)
        direction = math.copysign(1.0, span) if span else 0.0
        for t, pre, post in jlist:
            for gap in (pre, post):
                if gap == 0.0:
                    continue
                if direction == 0.0:
                    direction = math.copysign(1.0, gap)
                elif math.copysign(1.0, gap) != direction:
                    raise DomainError(
                        f"jump at {t!r} points against the monotone direction")
        self._direction = direction
        self._sanity_check_base()

    def _sanity_check_base(self) -> None:
        # Cheap guardrail, not certification: a handful of increments
        # must not contradict the claimed direction.
        a, b = self._interval.a, self._interval.b
        samples = [self._base(a + (b - a) * i / 8) for i in range(9)]
        for x, y in zip(samples, samples[1:]):
            if self._direction * (y - x) < 0:
                raise DomainError("base function violates its monotone direction")

    def _jump_part(self, t: float) -> float:
        return self._jump_step.value(t) if self._jump_step is not None else 0.0

    def value(self, t: float) -> float:
        self._interval.require(t)
        return self._base(t) + self._jump_part(t)

    def left_limit(self, t: float) -> float:
        if not self._interval.a < t <= self._interval.b:
            raise DomainError(f"left limit needs t in ({self._interval.a}, {self._interval.b}]")
        jump = self._jump_step.left_limit(t) if self._jump_step is not None else 0.0
        return self._base(t) + jump

    def right_limit(self, t: float) -> float:
        if not self._interval.a <= t < self._interval.b:
            raise DomainError(f"right limit needs t in [{self._interval.a}, {self._interval.b})")
        jump = self._jump_step.right_limit(t) if self._jump_step is not None else 0.0
        return self._base(t) + jump

    @property
    def variation_bound(self) -> float:
        # Monotone, so the variation is the total rise, exactly.
        return abs(self.value(self._interval.b) - self.value(self._interval.a))

    @property
    def sup_bound(self) -> float:
        return max(abs(self.value(self._interval.a)), abs(self.value(self._interval.b)))

    def jump_points(self) -> tuple[float, ...]:
        return tuple(t for t, pre, post in self._jumps if pre != 0.0 or post != 0.0)

    def approximate(self, eps: float) -> StepApproximation:
        """Bisect the continuous base until every cell's rise is at most
        2 * eps, take mid-range values, then add the jump part exactly."""
        if eps <= 0:
            raise DomainError(f"approximation tolerance must be positive, got {eps!r}")
        a, b = self._interval.a, self._interval.b
        nodes = [a]
        interior = []
        achieved = 0.0
        stack = [(a, b, self._base(a), self._base(b), 0)]
        while stack:
            u, v, fu, fv, depth = stack.pop()
            osc = abs(fv - fu)
            if osc <= 2.0 * eps:
                interior.append(0.5 * (fu + fv))
                nodes.append(v)
                achieved = max(achieved, 0.5 * osc)
                if len(interior) > MAX_APPROX_CELLS:
                    raise ApproximationError(
                        f"tolerance {eps!r} exceeds the cell limit {MAX_APPROX_CELLS}",
                        best_error=max(achieved, 0.5 * osc))
                continue
            mid = 0.5 * (u + v)
            if depth >= 60 or not u < mid < v:
                raise ApproximationError(
                    f"tolerance {eps!r} unreachable near {u!r} "
                    "(discontinuity or resolution limit in the base)",
                    best_error=0.5 * osc)
            fm = self._base(mid)
            stack.append((mid, v, fm, fv, depth + 1))
            stack.append((u, mid, fu, fm, depth + 1))
        node_values = [self._base(x) for x in nodes]
        base_step = StepFunction(self._interval, nodes, node_values, interior)
        if self._jump_step is not None:
            base_step = base_step + self._jump_step
        return StepApproximation(base_step, achieved)
