from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from marcinkiewicz.exact import INFINITY
from marcinkiewicz.gauge import PiecewiseLinearGauge
from marcinkiewicz.step import StepFunction

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance():
    def report(label: str, ok: bool, detail: str = ""):
        line = f"{'PASS' if ok else 'FAIL'} {label}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return report


def rationals(lo=0, hi=4, max_den=8):
    return st.builds(
        lambda n, d: Fraction(n, d),
        st.integers(lo * max_den, hi * max_den),
        st.just(max_den),
    ).map(lambda x: x.limit_denominator(max_den))


@st.composite
def step_functions(draw, gamma=None, max_pieces=5, allow_tail=True):
    if gamma is None:
        gamma = draw(st.sampled_from([Fraction(1), Fraction(3, 2), INFINITY]))
    length = Fraction(draw(st.integers(1, 6))) if gamma == INFINITY else gamma
    k = draw(st.integers(1, max_pieces))
    den = 12
    grid = int(length * den)
    cuts = sorted(draw(st.sets(st.integers(1, grid - 1), min_size=k - 1, max_size=k - 1)))
    ends = [Fraction(0)] + [Fraction(c, den) for c in cuts] + [length]
    values = draw(st.lists(rationals(0, 4, 6), min_size=k, max_size=k))
    tail = Fraction(0)
    if gamma == INFINITY and allow_tail:
        tail = draw(rationals(0, 3, 4))
    return StepFunction(tuple((ends[i], ends[i + 1], values[i]) for i in range(k)), tail, gamma)


@st.composite
def pl_gauges(draw, gamma=None, jump=None, growing=None):
    if gamma is None:
        gamma = draw(st.sampled_from([Fraction(1), Fraction(2), INFINITY]))
    span = Fraction(4) if gamma == INFINITY else gamma
    k = draw(st.integers(0, 3))
    ts = sorted(draw(st.sets(st.integers(1, int(span * 8) - 1), min_size=k, max_size=k)))
    slopes = sorted(draw(st.lists(rationals(1, 4, 4).filter(lambda x: x > 0), min_size=k + 1, max_size=k + 1)),
                    reverse=True)
    if gamma == INFINITY:
        grow = draw(st.booleans()) if growing is None else growing
        if not grow:
            slopes[-1] = Fraction(0)
    j = (draw(rationals(0, 2, 4)) if jump is None else Fraction(jump))
    pts, value, prev = [], j, Fraction(0)
    for t, s in zip(ts, slopes):
        t = Fraction(t, 8)
        value += s * (t - prev)
        pts.append((t, value))
        prev = t
    if not pts and slopes[-1] == 0 and j == 0:
        slopes[-1] = Fraction(1)
    return PiecewiseLinearGauge.from_knots(tuple(pts), j, slopes[-1], gamma)
