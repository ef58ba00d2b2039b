"""The three Stieltjes-type integrals.

Kinds
-----
* ``KURZWEIL`` (K): gauge limit of plain sums over fine free-tagged
  partitions.
* ``YOUNG`` (Y): refinement limit of jump-aware sums over interior-
  tagged partitions.
* ``DUSHNIK`` (D): refinement limit of plain sums over interior-tagged
  partitions.

K and Y agree whenever both exist here; D is the one that differs at
shared discontinuities, and it is exactly the kind that makes
integration by parts exact:

    K(f, dg) = Y(f, dg) = f(b) g(b) - f(a) g(a) - D(g, df)

for regulated f, g with at least one of finite variation.

Closed forms: for a step function in either slot, the integral reduces
by bilinearity to five elementary indicator integrands whose values
against any regulated g are one-sided limit expressions (the table in
``_forward_value`` / ``_backward_value``; cross-checked definitionally
by the oracle module's tests).  Everything else goes through certified
step approximants.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import Interval, RegulatedFunction
from .errors import DomainError, StepPairError, VariationUnknownError
from .stepfun import StepFunction, indicator
from .sums import BoundsReport, KahanSum, _make_check


class IntegralKind(Enum):
    KURZWEIL = "K"
    YOUNG = "Y"
    DUSHNIK = "D"

    @classmethod
    def from_letter(cls, letter: str) -> "IntegralKind":
        for kind in cls:
            if kind.value == letter:
                return kind
        raise DomainError(f"unknown integral kind {letter!r}")

    @property
    def letter(self) -> str:
        return self.value


class IndicatorKind(Enum):
    ONE = "one"                    # constant 1
    OPEN_FROM_A = "chi_open_a"     # chi of (a, b]
    OPEN_TAIL = "chi_open_tau"     # chi of (tau, b], tau interior
    CLOSED_TAIL = "chi_closed_tau" # chi of [tau, b], tau interior
    POINT_B = "chi_point_b"        # chi of the single point b


@dataclass(frozen=True, slots=True)
class ElementaryIntegrand:
    """One of the five indicator integrands, with its location when it
    has one."""

    kind: IndicatorKind
    tau: float | None = None

    def __post_init__(self):
        needs_tau = self.kind in (IndicatorKind.OPEN_TAIL, IndicatorKind.CLOSED_TAIL)
        if needs_tau and self.tau is None:
            raise DomainError(f"{self.kind.value} needs a location tau")
        if not needs_tau and self.tau is not None:
            raise DomainError(f"{self.kind.value} takes no location")

    def as_step(self, interval: Interval) -> StepFunction:
        a, b = interval.a, interval.b
        k = self.kind
        if k is IndicatorKind.ONE:
            return StepFunction.constant(interval, 1.0)
        if k is IndicatorKind.OPEN_FROM_A:
            return indicator(interval, a, b, closed_left=False, closed_right=True)
        if k is IndicatorKind.POINT_B:
            return indicator(interval, b, b, closed_left=True, closed_right=True)
        tau = self.tau
        if not interval.a < tau < interval.b:
            raise DomainError(f"tau={tau!r} must be strictly inside [{a}, {b}]")
        closed = k is IndicatorKind.CLOSED_TAIL
        return indicator(interval, tau, b, closed_left=closed, closed_right=True)


@dataclass(frozen=True, slots=True)
class Diagnostics:
    method: str
    approximant_error: float | None = None
    approximant_pieces: int | None = None


@dataclass(frozen=True, slots=True)
class IntegralResult:
    value: float
    kind: IntegralKind
    error_bound: float
    diagnostics: Diagnostics


def _require_tau(e: ElementaryIntegrand, interval: Interval) -> float:
    tau = e.tau
    if not interval.a < tau < interval.b:
        raise DomainError(
            f"tau={tau!r} must be strictly inside [{interval.a}, {interval.b}]")
    return tau


def _forward_value(e: ElementaryIntegrand, g: RegulatedFunction, kind: IntegralKind) -> float:
    """Integral of the indicator against dg.  K and Y share a column;
    D ignores one-sided limits at the left cut and drops the endpoint
    atom (its tags never reach the nodes)."""
    a, b = g.interval.a, g.interval.b
    ky = kind is not IntegralKind.DUSHNIK
    k = e.kind
    if k is IndicatorKind.ONE:
        return g.value(b) - g.value(a)
    if k is IndicatorKind.OPEN_FROM_A:
        return g.value(b) - (g.right_limit(a) if ky else g.value(a))
    if k is IndicatorKind.OPEN_TAIL:
        tau = _require_tau(e, g.interval)
        return g.value(b) - (g.right_limit(tau) if ky else g.value(tau))
    if k is IndicatorKind.CLOSED_TAIL:
        tau = _require_tau(e, g.interval)
        return g.value(b) - (g.left_limit(tau) if ky else g.value(tau))
    if k is IndicatorKind.POINT_B:
        return (g.value(b) - g.left_limit(b)) if ky else 0.0
    raise DomainError(f"unknown indicator kind {k!r}")


def _backward_value(g: RegulatedFunction, e: ElementaryIntegrand, kind: IntegralKind) -> float:
    """Integral of g against d(indicator)."""
    a, b = g.interval.a, g.interval.b
    ky = kind is not IntegralKind.DUSHNIK
    k = e.kind
    if k is IndicatorKind.ONE:
        return 0.0
    if k is IndicatorKind.OPEN_FROM_A:
        return g.value(a) if ky else g.right_limit(a)
    if k is IndicatorKind.OPEN_TAIL:
        tau = _require_tau(e, g.interval)
        return g.value(tau) if ky else g.right_limit(tau)
    if k is IndicatorKind.CLOSED_TAIL:
        tau = _require_tau(e, g.interval)
        return g.value(tau) if ky else g.left_limit(tau)
    if k is IndicatorKind.POINT_B:
        return g.value(b) if ky else g.left_limit(b)
    raise DomainError(f"unknown indicator kind {k!r}")


def elementary_forward(e: ElementaryIntegrand, g: RegulatedFunction,
                        kind: IntegralKind) -> IntegralResult:
    """Closed-form integral of an elementary indicator against dg."""
    return IntegralResult(_forward_value(e, g, kind), kind, 0.0,
                          Diagnostics("indicator-table"))


def elementary_backward(g: RegulatedFunction, e: ElementaryIntegrand,
                                kind: IntegralKind) -> IntegralResult:
    """Closed-form integral of g against the indicator's differential."""
    return IntegralResult(_backward_value(g, e, kind), kind, 0.0,
                          Diagnostics("indicator-table"))


def _tail_indicator(sigma: float, a: float, closed: bool) -> ElementaryIntegrand:
    if closed:
        return ElementaryIntegrand(IndicatorKind.CLOSED_TAIL, sigma)
    if sigma == a:
        return ElementaryIntegrand(IndicatorKind.OPEN_FROM_A)
    return ElementaryIntegrand(IndicatorKind.OPEN_TAIL, sigma)


def integrate_step_pair(f: RegulatedFunction, g: RegulatedFunction,
                        kind: IntegralKind) -> IntegralResult:
    """Exact integral when either argument is a step function, by
    splitting the step argument into its indicator components."""
    if f.interval != g.interval:
        raise DomainError("integrand and integrator live on different intervals")
    a, b = f.interval.a, f.interval.b
    acc = KahanSum()
    if isinstance(f, StepFunction):
        dec = f.decompose()
        acc.add(dec.base * (g.value(b) - g.value(a)))
        for sigma, w in dec.plus_jumps:
            acc.add(w * _forward_value(_tail_indicator(sigma, a, False), g, kind))
        for sigma, w in dec.minus_jumps:
            acc.add(w * _forward_value(_tail_indicator(sigma, a, True), g, kind))
        if dec.endpoint != 0.0:
            acc.add(dec.endpoint *
                    _forward_value(ElementaryIntegrand(IndicatorKind.POINT_B), g, kind))
    elif isinstance(g, StepFunction):
        dec = g.decompose()
        for sigma, w in dec.plus_jumps:
            acc.add(w * _backward_value(f, _tail_indicator(sigma, a, False), kind))
        for sigma, w in dec.minus_jumps:
            acc.add(w * _backward_value(f, _tail_indicator(sigma, a, True), kind))
        if dec.endpoint != 0.0:
            acc.add(dec.endpoint *
                    _backward_value(f, ElementaryIntegrand(IndicatorKind.POINT_B), kind))
    else:
        raise StepPairError(
            "integrate_step_pair needs a step function in one slot; "
            "use integrate() for general regulated pairs")
    return IntegralResult(acc.value, kind, 0.0, Diagnostics("step-table"))


def integrate_limit(f: RegulatedFunction, g: RegulatedFunction,
                    kind: IntegralKind, tol: float = 1e-9) -> IntegralResult:
    """Integral of f against dg through certified step approximants.

    The regulated factor is replaced by a step approximant and the
    defect is bounded a priori:

        |I(f, dg) - I(f_n, dg)| <= sup|f - f_n| * var g
        |I(f, dg) - I(f, dg_n)| <= (|f(a)| + |f(b)| + var f) * sup|g - g_n|

    The variation factor is never approximated; when both variations
    are known the side with the smaller predicted bound is kept.  Needs
    at least one argument of certified finite variation; the returned
    ``error_bound`` is the achieved certificate and never exceeds
    ``tol``.  (A step argument approximates to itself, so the result is
    then exact with error_bound 0.)
    """
    if tol <= 0:
        raise DomainError(f"tolerance must be positive, got {tol!r}")
    if f.interval != g.interval:
        raise DomainError("integrand and integrator live on different intervals")
    var_g = g.variation_bound
    var_f = f.variation_bound
    if var_g is None and var_f is None:
        raise VariationUnknownError(
            "the limit route needs a certified variation bound on f or g")

    a, b = f.interval.a, f.interval.b
    predicted_f = None if var_g is None else tol * var_g / (2.0 * var_g + 1.0)
    bv_f = None if var_f is None else abs(f.value(a)) + abs(f.value(b)) + var_f
    predicted_g = None if bv_f is None else tol * bv_f / (bv_f + 1.0)

    # A step argument approximates to itself at zero cost, so that side
    # always wins; otherwise take the smaller predicted bound.
    if f.is_step:
        take_f = True
    elif g.is_step:
        take_f = False
    else:
        take_f = predicted_g is None or (
            predicted_f is not None and predicted_f <= predicted_g)

    if take_f:
        # Approximate the integrand, integrate exactly against g.
        eps = tol if var_g is None else tol / (2.0 * var_g + 1.0)
        fn, err = f.approximate(eps)
        exact = integrate_step_pair(fn, g, kind)
        return IntegralResult(
            exact.value, kind, 0.0 if err == 0.0 else err * var_g,
            Diagnostics("limit-integrand", err, fn.piece_count))
    eps = tol if bv_f is None else tol / (bv_f + 1.0)
    gn, err = g.approximate(eps)
    exact = integrate_step_pair(f, gn, kind)
    return IntegralResult(
        exact.value, kind, 0.0 if err == 0.0 else bv_f * err,
        Diagnostics("limit-integrator", err, gn.piece_count))


def integrate(f: RegulatedFunction, g: RegulatedFunction, kind: IntegralKind,
              tol: float = 1e-9) -> IntegralResult:
    """Front door: exact closed form whenever either argument is a
    step function (no variation bound needed then), the certified limit
    route otherwise."""
    if tol <= 0:
        raise DomainError(f"tolerance must be positive, got {tol!r}")
    if isinstance(f, StepFunction) or isinstance(g, StepFunction):
        return integrate_step_pair(f, g, kind)
    return integrate_limit(f, g, kind, tol)


def by_parts(f: RegulatedFunction, g: RegulatedFunction, kind: IntegralKind,
             tol: float = 1e-9) -> IntegralResult:
    """Integral of f against dg computed through the flipped integral:

        K or Y result = f(b) g(b) - f(a) g(a) - D(g, df)
        D result      = f(b) g(b) - f(a) g(a) - K(g, df)
    """
    a, b = f.interval.a, f.interval.b
    boundary = f.value(b) * g.value(b) - f.value(a) * g.value(a)
    inner_kind = (IntegralKind.DUSHNIK if kind is not IntegralKind.DUSHNIK
                  else IntegralKind.KURZWEIL)
    inner = integrate(g, f, inner_kind, tol)
    return IntegralResult(boundary - inner.value, kind, inner.error_bound,
                          Diagnostics("by-parts", inner.diagnostics.approximant_error,
                                      inner.diagnostics.approximant_pieces))


def check_integral_bounds(result: IntegralResult, f: RegulatedFunction,
                          g: RegulatedFunction, slack: float = 1e-12) -> BoundsReport:
    """The integral-level versions of the sum bounds, inflated by the
    result's own error bound."""
    a, b = f.interval.a, f.interval.b
    var_f, var_g = f.variation_bound, g.variation_bound
    sup_var = None if var_g is None else f.sup_bound * var_g + result.error_bound
    bv_sup = None if var_f is None else \
        (abs(f.value(a)) + abs(f.value(b)) + var_f) * g.sup_bound + result.error_bound
    return BoundsReport((
        _make_check("integral_sup_var", result.value, sup_var, slack),
        _make_check("integral_bv_sup", result.value, bv_sup, slack),
    ))
