"""Concave gauges, their doubling ratio and the (A)/(B) classification.

Two backends are supported: exact piecewise-linear gauges and power gauges
``c * t**(1 - 1/p)``.  For piecewise-linear gauges the ratio
``psi(2t)/psi(t)`` is a quotient of two affine maps between consecutive
points of ``knots | knots/2``, hence monotone there, which makes infima and
limits exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import DivergentIntegral, OutOfDomain, UnsupportedBackend
from .exact import (
    INFINITY,
    Extent,
    Interval,
    Number,
    as_extent,
    as_rational,
    format_extent,
    format_number,
    is_infinite,
    log_enclosure,
    rational_power,
)
from .step import PiecewiseLinearConcave, StepFunction

ZERO = Fraction(0)
ONE = Fraction(1)


class ConcaveGauge:
    """Common surface of the two gauge backends."""

    kind: str
    gamma: Extent

    @property
    def jump(self) -> Fraction:
        """``psi(0+)``."""
        raise NotImplementedError

    def value(self, t) -> Number:
        """``psi(t)`` for ``0 < t <= gamma`` (the endpoint by continuity)."""
        raise NotImplementedError

    def __call__(self, t) -> Number:
        return eval_gauge(self, t)


@dataclass(frozen=True)
class PiecewiseLinearGauge(ConcaveGauge):
    profile: PiecewiseLinearConcave
    kind: str = field(default="pl", init=False)

    def __post_init__(self):
        p = self.profile
        if p.jump == 0 and not p.knots and p.final_slope == 0:
            raise ValueError("the gauge must not vanish identically")

    @classmethod
    def from_knots(cls, knots=(), jump=0, final_slope=0, gamma=INFINITY) -> "PiecewiseLinearGauge":
        return cls(PiecewiseLinearConcave(tuple(knots), jump, final_slope, gamma))

    @property
    def gamma(self) -> Extent:
        return self.profile.gamma

    @property
    def jump(self) -> Fraction:
        return self.profile.jump

    @property
    def final_slope(self) -> Fraction:
        return self.profile.final_slope

    def value(self, t) -> Fraction:
        return self.profile(t)


@dataclass(frozen=True)
class PowerGauge(ConcaveGauge):
    """``coefficient * t**(1 - 1/p)`` on ``(0, gamma)``."""

    p: Fraction
    coefficient: Fraction = ONE
    gamma: Extent = INFINITY
    kind: str = field(default="power", init=False)

    def __post_init__(self):
        object.__setattr__(self, "p", as_rational(self.p))
        object.__setattr__(self, "coefficient", as_rational(self.coefficient))
        object.__setattr__(self, "gamma", as_extent(self.gamma))
        if self.p <= 1:
            raise ValueError("p must exceed 1")
        if self.coefficient <= 0:
            raise ValueError("coefficient must be positive")

    @property
    def exponent(self) -> Fraction:
        return 1 - 1 / self.p

    @property
    def jump(self) -> Fraction:
        return ZERO

    def value(self, t) -> Number:
        return self.coefficient * rational_power(t, self.exponent)


def min_linear(slope, cap, gamma=INFINITY) -> PiecewiseLinearGauge:
    """The gauge ``min(slope * t, cap)``."""
    slope, cap = as_rational(slope), as_rational(cap)
    corner = cap / slope
    gamma = as_extent(gamma)
    if corner >= gamma:
        return PiecewiseLinearGauge.from_knots((), 0, slope, gamma)
    return PiecewiseLinearGauge.from_knots(((corner, cap),), 0, 0, gamma)


def linear(gamma=INFINITY, slope=1) -> PiecewiseLinearGauge:
    return PiecewiseLinearGauge.from_knots((), 0, slope, gamma)


def _require_inside(psi: ConcaveGauge, t) -> Fraction:
    t = as_rational(t)
    if not 0 < t < psi.gamma:
        raise OutOfDomain(f"{t} outside (0, {format_extent(psi.gamma)})")
    return t


def eval_gauge(psi: ConcaveGauge, t) -> Number:
    """``psi(t)``: a Fraction for PL gauges, an exact Radical for power gauges."""
    return psi.value(_require_inside(psi, t))


def gauge_at_end(psi: ConcaveGauge):
    """``psi(gamma)`` by continuity, or the limit at infinity."""
    if is_infinite(psi.gamma):
        if isinstance(psi, PiecewiseLinearGauge):
            return psi.profile.value_at_end()
        return INFINITY
    return psi.value(psi.gamma)


def gauge_derivative(psi: ConcaveGauge) -> StepFunction:
    """The decreasing step function of slopes of a PL gauge."""
    if not isinstance(psi, PiecewiseLinearGauge):
        raise UnsupportedBackend("the derivative of a power gauge is not a step function")
    segs = psi.profile.segments()
    cells = tuple((t0, t1, s) for t0, t1, s, _ in segs[:-1])
    return StepFunction(cells, segs[-1][2], psi.gamma)


def big_psi_eval(psi: ConcaveGauge, t) -> Number:
    """``Psi(t) = psi(t) / t``."""
    t = _require_inside(psi, t)
    return psi.value(t) / t


def big_psi_at(psi: ConcaveGauge, t) -> Number:
    """``Psi`` at ``0 < t <= gamma``, with ``Psi(inf)`` as a limit."""
    if is_infinite(t):
        return psi.final_slope if isinstance(psi, PiecewiseLinearGauge) else ZERO
    return psi.value(t) / t


def big_psi_head_integral(psi: ConcaveGauge, t, precision: int = 128) -> Interval:
    """Certified enclosure of ``int_0^t psi(s)/s ds``."""
    t = as_rational(t)
    if not 0 < t <= psi.gamma:
        raise OutOfDomain(f"{t} outside (0, {format_extent(psi.gamma)}]")
    if psi.jump > 0:
        raise DivergentIntegral("psi(0+) > 0 makes Psi non-integrable at 0")
    if isinstance(psi, PowerGauge):
        return Interval.of(psi.value(t) / psi.exponent, precision)
    total = Interval.point(0)
    for t0, t1, slope, intercept in psi.profile.segments():
        if t0 >= t:
            break
        t1 = min(t1, t)
        total = total + slope * (t1 - t0)
        if intercept:
            # a segment with nonzero intercept never starts at 0 when psi(0+) = 0
            total = total + intercept * log_enclosure(t1 / t0, precision + 8)
    return total.round_out(precision + 4) if not total.is_point else total


# ---------------------------------------------------------------------------
# Doubling ratio
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatioSegment:
    left: Fraction
    right: Extent
    left_value: Number
    right_value: Number

    @property
    def trend(self) -> str:
        if self.left_value == self.right_value:
            return "constant"
        return "increasing" if self.right_value > self.left_value else "decreasing"


@dataclass(frozen=True)
class RatioProfile:
    """``t -> psi(2t)/psi(t)`` on ``(0, gamma/2)`` or ``(0, inf)``.

    ``segments`` carry the values (limits at open ends) at their endpoints;
    the ratio is monotone on each.  Power gauges have ``constant`` set.
    """

    segments: tuple
    limit_at_zero: Number
    limit_at_end: Number
    end: Extent
    constant: Optional[Number] = None

    def points(self) -> list:
        return [s.left for s in self.segments[1:]]

    def infimum(self, upto=None) -> Number:
        """Exact infimum over ``(0, upto]`` (whole domain by default)."""
        if self.constant is not None:
            return self.constant
        vals = [self.limit_at_zero]
        for s in self.segments:
            if upto is not None and s.left >= upto:
                break
            vals.append(s.left_value)
            if upto is None or s.right <= upto:
                vals.append(s.right_value)
        return min(vals)


def ratio_at(psi: ConcaveGauge, t) -> Number:
    """``psi(2t)/psi(t)`` for ``0 < 2t <= gamma``."""
    t = as_rational(t)
    if not (0 < t and 2 * t <= psi.gamma):
        raise OutOfDomain(f"ratio undefined at {t}")
    return psi.value(2 * t) / psi.value(t)


def _limit_at_zero(psi: ConcaveGauge) -> Number:
    if isinstance(psi, PowerGauge):
        return rational_power(2, psi.exponent)
    return ONE if psi.jump > 0 else Fraction(2)


def _limit_at_infinity(psi: ConcaveGauge) -> Number:
    if isinstance(psi, PowerGauge):
        return rational_power(2, psi.exponent)
    return Fraction(2) if psi.final_slope > 0 else ONE


def doubling_profile(psi: ConcaveGauge) -> RatioProfile:
    end = psi.gamma if is_infinite(psi.gamma) else psi.gamma / 2
    if isinstance(psi, PowerGauge):
        c = rational_power(2, psi.exponent)
        return RatioProfile((RatioSegment(ZERO, end, c, c),), c, c, end, constant=c)
    knots = psi.profile.points()
    pts = sorted({k for k in knots if k < end} | {k / 2 for k in knots if k / 2 < end})
    lim0 = _limit_at_zero(psi)
    lim_end = _limit_at_infinity(psi) if is_infinite(end) else ratio_at(psi, end)
    xs = [ZERO] + pts + [end]
    vals = [lim0] + [ratio_at(psi, t) for t in pts] + [lim_end]
    segs = tuple(RatioSegment(xs[i], xs[i + 1], vals[i], vals[i + 1]) for i in range(len(xs) - 1))
    return RatioProfile(segs, lim0, lim_end, end)


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionReport:
    verdict: str  # "A", "B" or "NEITHER"
    beta: Optional[Number]
    delta: Optional[Fraction]
    liminf_at_zero: Number
    liminf_at_infinity: Optional[Number]
    grothendieck: bool
    notes: tuple = ()

    def to_text(self) -> str:
        def fmt(x):
            return "none" if x is None else format_number(x)

        lines = [
            f"verdict = {self.verdict}",
            f"beta = {fmt(self.beta)}",
            f"delta = {fmt(self.delta)}",
            f"liminf_at_zero = {fmt(self.liminf_at_zero)}",
            f"liminf_at_infinity = {fmt(self.liminf_at_infinity)}",
            f"grothendieck = {'yes' if self.grothendieck else 'no'}",
        ]
        lines += [f"note = {n}" for n in self.notes]
        return "\n".join(lines) + "\n"

    def as_dict(self) -> dict:
        def fmt(x):
            return None if x is None else format_number(x)

        return {
            "verdict": self.verdict,
            "beta": fmt(self.beta),
            "delta": fmt(self.delta),
            "liminf_at_zero": fmt(self.liminf_at_zero),
            "liminf_at_infinity": fmt(self.liminf_at_infinity),
            "grothendieck": self.grothendieck,
            "notes": list(self.notes),
        }


def _choose_delta(profile: RatioProfile, psi: ConcaveGauge) -> Fraction:
    """Largest profile point ``<= gamma/4`` where the ratio still exceeds 1."""
    quarter = psi.gamma / 4
    if profile.constant is not None or ratio_at(psi, quarter) > 1:
        return quarter
    # the ratio equals 1 from some point on and exceeds 1 before it
    candidates = [t for t in profile.points() if t < quarter and ratio_at(psi, t) > 1]
    return max(candidates)


def classify(psi: ConcaveGauge) -> ConditionReport:
    """Decide (A), (B) or neither, with a certificate ``beta`` (and ``delta`` for (B))."""
    profile = doubling_profile(psi)
    lim0 = _limit_at_zero(psi)
    notes = []
    if psi.jump > 0:
        notes.append("psi(0+) > 0")
    if is_infinite(psi.gamma):
        lim_inf = _limit_at_infinity(psi)
        if isinstance(psi, PiecewiseLinearGauge) and psi.final_slope == 0:
            notes.append("psi is bounded on (0, inf)")
        if lim0 > 1 and lim_inf > 1:
            beta = profile.infimum()
            return ConditionReport("A", beta, None, lim0, lim_inf, True, tuple(notes))
        return ConditionReport("NEITHER", None, None, lim0, lim_inf, False, tuple(notes))
    if lim0 > 1:
        delta = _choose_delta(profile, psi)
        beta = min(profile.infimum(delta), ratio_at(psi, delta))
        return ConditionReport("B", beta, delta, lim0, None, True, tuple(notes))
    return ConditionReport("NEITHER", None, None, lim0, None, False, tuple(notes))
