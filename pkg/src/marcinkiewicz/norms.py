"""Marcinkiewicz, natural, Lorentz and weak-L_p norms of step functions.

The Marcinkiewicz norm is ``sup_t H_f(t) / psi(t)`` with ``H_f`` the head
integral profile.  On each segment of the common refinement both are affine
(PL gauge) or ``H_f`` is affine and ``psi`` a power (power gauge); in both
cases the quotient has no interior maximum, so the supremum is taken over
breakpoints and the two end limits.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import DomainMismatch, HypothesisViolated, UnsupportedBackend
from .exact import (
    Extent,
    Interval,
    Number,
    Radical,
    as_extent,
    as_rational,
    format_number,
    is_infinite,
    rational_power,
)
from .gauge import (
    ConcaveGauge,
    PiecewiseLinearGauge,
    PowerGauge,
    gauge_at_end,
    gauge_derivative,
)
from .step import (
    StepFunction,
    head_integral_profile,
    product_integral,
    rearrange,
    submajorizes,
)

ZERO = Fraction(0)

LIMIT_AT_ZERO = "limit0"
LIMIT_AT_GAMMA = "limitGamma"


@dataclass(frozen=True)
class NormValue:
    """A norm: exact value (Fraction or Radical) or ``finite=False``."""

    value: Optional[Number]
    attained_at: Union[Fraction, str, None] = None
    finite: bool = True

    @classmethod
    def infinite(cls, where=LIMIT_AT_GAMMA) -> "NormValue":
        return cls(None, where, False)

    def enclose(self, bits: int = 128) -> Interval:
        if not self.finite:
            raise ValueError("infinite norm has no enclosure")
        return Interval.of(self.value, bits)

    def rows(self, precision: int = 128) -> list:
        """Report rows ``key = value``."""
        where = self.attained_at
        where = format_number(where) if isinstance(where, Fraction) else (where or "none")
        if not self.finite:
            return [("norm", "inf"), ("attained_at", where), ("finite", "no")]
        if isinstance(self.value, Radical):
            return [
                ("norm", str(self.enclose(precision))),
                ("precision_bits", str(precision)),
                ("exact", format_number(self.value)),
                ("attained_at", where),
                ("finite", "yes"),
            ]
        return [("norm", format_number(self.value)), ("attained_at", where), ("finite", "yes")]

    def __le__(self, other):
        if not self.finite:
            return isinstance(other, NormValue) and not other.finite
        if isinstance(other, NormValue):
            return (not other.finite) or self.value <= other.value
        return self.value <= other


def _check_domain(f: StepFunction, psi: ConcaveGauge):
    if f.gamma != psi.gamma:
        raise DomainMismatch(f"function on (0, {f.gamma}) but gauge on (0, {psi.gamma})")


def _argmax(candidates):
    """Largest value; ties resolved to the earliest candidate (breakpoints first)."""
    best = None
    for value, where in candidates:
        if best is None or value > best[0]:
            best = (value, where)
    return best


def _sup_ratio(f: StepFunction, psi: ConcaveGauge, upto=None) -> NormValue:
    """``sup_{0<t<gamma} H_f/psi`` or, with ``upto``, ``sup_{0<t<=upto}``."""
    h = head_integral_profile(f)
    gamma = psi.gamma
    limit = upto if upto is not None else gamma
    if isinstance(psi, PiecewiseLinearGauge):
        pts = sorted({t for t in h.points() + psi.profile.points() if t < limit})
    else:
        pts = [t for t in h.points() if t < limit]
    candidates = [(h(t) / psi.value(t), t) for t in pts]

    # closed right end for the natural norm
    if upto is not None:
        candidates.append((h(upto) / psi.value(upto), upto))

    # limit at 0+
    fs0 = rearrange(f).cells()[0][2]
    if isinstance(psi, PiecewiseLinearGauge) and psi.jump == 0:
        lim0 = fs0 / psi.profile.segments()[0][2]
    else:
        lim0 = ZERO
    candidates.append((lim0, LIMIT_AT_ZERO))

    if upto is None:
        if not is_infinite(gamma):
            candidates.append((h(gamma) / psi.value(gamma), LIMIT_AT_GAMMA))
        else:
            a1 = h.final_slope
            if isinstance(psi, PiecewiseLinearGauge):
                a2 = psi.final_slope
                if a2 > 0:
                    candidates.append((a1 / a2, LIMIT_AT_GAMMA))
                elif a1 > 0:
                    return NormValue.infinite()
                else:
                    # both flat: the ratio tends to its value on the last segment
                    b1, b2 = h.segments()[-1][3], psi.profile.segments()[-1][3]
                    candidates.append((b1 / b2, LIMIT_AT_GAMMA))
            elif a1 > 0:
                return NormValue.infinite()
            else:
                candidates.append((ZERO, LIMIT_AT_GAMMA))
    value, where = _argmax(candidates)
    return NormValue(value, where, True)


def marcinkiewicz_norm(f: StepFunction, psi: ConcaveGauge) -> NormValue:
    """``||f||_{M_psi} = sup_{0<t<gamma} (1/psi(t)) int_0^t f*``, exactly."""
    _check_domain(f, psi)
    return _sup_ratio(f, psi)


def natural_norm(f: StepFunction, psi: ConcaveGauge, delta) -> NormValue:
    """The norm ``sup_{0<t<=delta} (1/psi(t)) int_0^t f*`` on a finite interval."""
    _check_domain(f, psi)
    delta = as_rational(delta)
    if is_infinite(psi.gamma) or not 0 < delta < psi.gamma:
        raise ValueError("natural norm needs 0 < delta < gamma < inf")
    return _sup_ratio(f, psi, upto=delta)


def natural_equivalence_constant(psi: ConcaveGauge, delta, bits: int = 128):
    """``1 + (gamma/psi(gamma)) * (psi(delta)/delta)``; Interval for power gauges."""
    delta = as_rational(delta)
    gamma = psi.gamma
    c = (gamma / psi.value(gamma)) * (psi.value(delta) / delta)
    if isinstance(c, Radical):
        return 1 + c.enclose(bits)
    return 1 + c


def unit_ball_member(f: StepFunction, psi: ConcaveGauge) -> bool:
    """Whether ``f`` is submajorized by ``psi'`` (the closed unit ball)."""
    if not isinstance(psi, PiecewiseLinearGauge):
        raise UnsupportedBackend("unit ball test needs a piecewise-linear gauge")
    if psi.jump > 0:
        raise HypothesisViolated("the unit ball identity needs psi(0+) = 0")
    _check_domain(f, psi)
    return submajorizes(gauge_derivative(psi), f, psi.gamma)


def lorentz_norm(f: StepFunction, psi: ConcaveGauge) -> NormValue:
    """``int f* dpsi = psi(0+) f*(0+) + int f* psi'``."""
    if not isinstance(psi, PiecewiseLinearGauge):
        raise UnsupportedBackend("Lorentz norm is implemented for piecewise-linear gauges")
    _check_domain(f, psi)
    fs = rearrange(f)
    dpsi = gauge_derivative(psi)
    total = psi.jump * fs.cells()[0][2]
    integral = product_integral(fs, dpsi)
    if is_infinite(integral):
        return NormValue.infinite()
    return NormValue(total + integral, None, True)


def weak_lp_norm(f: StepFunction, p) -> NormValue:
    """Marcinkiewicz norm for the gauge ``t**(1 - 1/p)``."""
    return marcinkiewicz_norm(f, PowerGauge(as_rational(p), 1, f.gamma))


def weak_lp_quasinorm(f: StepFunction, p) -> NormValue:
    """``sup_t t**(1/p) f*(t)``, approached at the right ends of the pieces of ``f*``."""
    p = as_rational(p)
    fs = rearrange(f)
    best = None
    for a, b, v in fs.cells():
        if v == 0:
            continue
        if is_infinite(b):
            return NormValue.infinite()
        cand = v * rational_power(b, 1 / p)
        if best is None or cand > best[0]:
            best = (cand, b)
    if best is None:
        return NormValue(ZERO, LIMIT_AT_ZERO, True)
    return NormValue(best[0], best[1], True)


# ---------------------------------------------------------------------------
# General measures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscreteFunction:
    """A function on a finite discrete measure: atoms ``(weight, value)``."""

    atoms: tuple

    def __post_init__(self):
        atoms = tuple((as_rational(w), as_rational(v)) for w, v in self.atoms)
        if any(w <= 0 for w, _ in atoms):
            raise ValueError("atom weights must be positive")
        if any(v < 0 for _, v in atoms):
            raise ValueError("values must be nonnegative")
        object.__setattr__(self, "atoms", atoms)

    @property
    def total_weight(self) -> Fraction:
        return sum((w for w, _ in self.atoms), ZERO)

    def rearrangement(self, gamma: Extent = None) -> StepFunction:
        """``f*`` as a step function on ``(0, gamma)`` (zero past the total weight)."""
        gamma = self.total_weight if gamma is None else as_extent(gamma)
        if self.total_weight > gamma:
            raise DomainMismatch("atoms outweigh the interval")
        cells = []
        pos = ZERO
        for w, v in sorted(self.atoms, key=lambda a: -a[1]):
            cells.append((pos, pos + w, v))
            pos += w
        return StepFunction(tuple(cells), ZERO, gamma)


def norm_on_measure(f: DiscreteFunction, psi: ConcaveGauge) -> NormValue:
    """``||f||_{M_psi(mu)} = ||f*||_{M_psi(0, gamma)}``."""
    return marcinkiewicz_norm(f.rearrangement(psi.gamma), psi)


def derivative_norm_formula(psi: PiecewiseLinearGauge) -> Fraction:
    """``1 - psi(0+)/psi(gamma)`` for finite ``gamma``."""
    return 1 - psi.jump / gauge_at_end(psi)
