from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from marcinkiewicz.errors import DivergentIntegral, OutOfDomain, UnsupportedBackend
from marcinkiewicz.exact import INFINITY, Interval, rational_power
from marcinkiewicz.gauge import (
    PiecewiseLinearGauge,
    PowerGauge,
    big_psi_eval,
    big_psi_head_integral,
    classify,
    doubling_profile,
    eval_gauge,
    gauge_derivative,
    linear,
    min_linear,
    ratio_at,
)
from marcinkiewicz.step import head_integral, indicator, is_decreasing

from conftest import pl_gauges, rationals

F = Fraction
MIN_2T = min_linear(2, 1, 1)


def test_evaluation_examples():
    assert eval_gauge(MIN_2T, F(1, 4)) == F(1, 2)
    assert eval_gauge(PowerGauge(2), 1) == 1
    assert eval_gauge(PowerGauge(2), 4) == 2
    with pytest.raises(OutOfDomain):
        eval_gauge(MIN_2T, 1)


def test_derivative_examples():
    assert gauge_derivative(MIN_2T) == indicator(0, F(1, 2), 1, 2)
    assert gauge_derivative(linear(1)) == indicator(0, 1, 1)
    with pytest.raises(UnsupportedBackend):
        gauge_derivative(PowerGauge(2))


@given(pl_gauges())
def test_derivative_integrates_back(psi):
    d = gauge_derivative(psi)
    assert is_decreasing(d)
    for t in psi.profile.points() + [F(1, 3)]:
        if t < psi.gamma:
            assert head_integral(d, t) == psi.value(t) - psi.jump


def test_big_psi_examples():
    assert big_psi_eval(MIN_2T, F(1, 2)) == 2
    assert big_psi_eval(linear(), F(7, 3)) == 1
    assert big_psi_eval(PowerGauge(2), 4) == F(1, 2)


@given(pl_gauges(), rationals(0, 4, 8), rationals(0, 4, 8))
def test_big_psi_is_decreasing(psi, a, b):
    a, b = sorted((a, b))
    top = psi.gamma if psi.gamma != INFINITY else 100
    if 0 < a and b < top:
        assert big_psi_eval(psi, a) >= big_psi_eval(psi, b)


def _midpoint_quadrature(psi, t, n=20000):
    # substitute s = t u^2 to tame the 1/s behaviour near 0
    total = 0.0
    for i in range(n):
        u = (i + 0.5) / n
        s = t * u * u
        total += float(psi.value(F(s).limit_denominator(10**9))) / s * 2 * t * u / n
    return total


def test_big_psi_integral_examples():
    assert big_psi_head_integral(PowerGauge(2), 1) == Interval.point(2)
    assert big_psi_head_integral(linear(1), 1) == Interval.point(1)
    assert big_psi_head_integral(MIN_2T, F(1, 4)) == Interval.point(F(1, 2))
    with pytest.raises(DivergentIntegral):
        big_psi_head_integral(PiecewiseLinearGauge.from_knots((), 1, 0, 1), F(1, 2))


def test_big_psi_integral_with_logarithm_matches_quadrature():
    # psi = min(2t, 1) on (0, 1): int_0^1 Psi = 1 + ln 2
    box = big_psi_head_integral(MIN_2T, 1, 96)
    assert box.width < F(1, 2 ** 90)
    assert abs(float(box.midpoint()) - 1.6931471805599453) < 1e-15
    psi = PiecewiseLinearGauge.from_knots(((F(1, 3), F(1)), (F(2), F(3, 2))), 0, F(1, 4), INFINITY)
    box = big_psi_head_integral(psi, 5)
    assert abs(float(box.midpoint()) - _midpoint_quadrature(psi, 5)) < 1e-6


@given(st.sampled_from([F(3, 2), F(2), F(3), F(5, 4)]), rationals(1, 9, 4))
def test_power_gauge_big_psi_integral_closed_form(p, t):
    box = big_psi_head_integral(PowerGauge(p), t, 64)
    exact = float(t) ** (1 - 1 / float(p)) * float(p) / (float(p) - 1)
    assert abs(float(box.midpoint()) - exact) < 1e-12 * max(1, exact)


# -- doubling profile and classification ---------------------------------------

def test_doubling_profile_of_remark_gauge():
    prof = doubling_profile(MIN_2T)
    assert prof.limit_at_zero == 2
    assert ratio_at(MIN_2T, F(1, 8)) == 2 and ratio_at(MIN_2T, F(1, 4)) == 2
    assert ratio_at(MIN_2T, F(3, 8)) == F(4, 3)  # 1/(2t)
    assert prof.limit_at_end == 1
    assert doubling_profile(linear()).infimum() == 2
    assert doubling_profile(PowerGauge(2)).constant == rational_power(2, F(1, 2))


@given(pl_gauges())
def test_ratio_is_at_least_one_and_sticks_at_one(psi):
    prof = doubling_profile(psi)
    pts = [s.left for s in prof.segments[1:]]
    values = [ratio_at(psi, t) for t in pts]
    assert all(v >= 1 for v in values)
    for i, v in enumerate(values):
        if v == 1:
            assert all(w == 1 for w in values[i:])


def test_classification_examples():
    a = classify(PowerGauge(2))
    assert (a.verdict, a.beta, a.grothendieck) == ("A", rational_power(2, F(1, 2)), True)
    b = classify(MIN_2T)
    assert (b.verdict, b.beta, b.delta, b.grothendieck) == ("B", 2, F(1, 4), True)
    n = classify(min_linear(1, 1))
    assert (n.verdict, n.liminf_at_infinity, n.grothendieck) == ("NEITHER", 1, False)
    assert "psi is bounded on (0, inf)" in n.notes
    j = classify(PiecewiseLinearGauge.from_knots((), 1, 0, 1))
    assert (j.verdict, j.liminf_at_zero, j.grothendieck) == ("NEITHER", 1, False)


def test_delta_backs_off_where_the_ratio_reaches_one():
    # psi = min(8t, 1) on (0, 1): ratio is 1 from t = 1/8 on, so delta < 1/4
    report = classify(min_linear(8, 1, 1))
    assert report.verdict == "B"
    assert report.delta == F(1, 16)
    assert report.beta == 2


@given(pl_gauges(jump=0))
def test_classification_certificates(psi):
    report = classify(psi)
    assert report.grothendieck == (report.verdict != "NEITHER")
    if report.verdict == "NEITHER":
        return
    assert report.beta > 1
    top = report.delta if report.verdict == "B" else 40
    if report.verdict == "B":
        assert 0 < report.delta < psi.gamma / 2
    for k in range(1, 41):
        t = top * F(k, 40)
        assert psi.value(2 * t) >= report.beta * psi.value(t)


@given(pl_gauges(jump=F(1, 2)))
def test_jump_gauges_are_never_grothendieck(psi):
    assert classify(psi).verdict == "NEITHER"


@given(st.sampled_from([F(3, 2), F(2), F(3), F(7, 5)]), rationals(1, 40, 8))
def test_power_gauges_satisfy_the_doubling_bound(p, t):
    psi = PowerGauge(p)
    report = classify(psi)
    assert report.verdict == "A"
    if t > 0:
        assert psi.value(2 * t) >= report.beta * psi.value(t)
