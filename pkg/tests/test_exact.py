import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from marcinkiewicz.exact import (
    INFINITY,
    Interval,
    Radical,
    as_extent,
    as_rational,
    format_number,
    iroot,
    log_enclosure,
    parse_number,
    radical,
    rational_power,
    root_enclosure,
    to_decimal_string,
)

F = Fraction


@given(st.integers(0, 10**40), st.integers(1, 7))
def test_iroot_brackets(n, k):
    r = iroot(n, k)
    assert r ** k <= n < (r + 1) ** k


def test_radicals_collapse_when_rational():
    assert rational_power(4, F(1, 2)) == 2
    assert isinstance(rational_power(4, F(1, 2)), Fraction)
    assert radical(2, F(1, 4), 3) == rational_power(2, F(1, 3))
    assert format_number(radical(2, F(1, 4), 3)) == "2^(1/3)"
    assert format_number(rational_power(2, F(1, 2))) == "2^(1/2)"


def test_radical_comparisons_are_exact():
    r2 = rational_power(2, F(1, 2))
    assert F(141421, 100000) < r2 < F(141422, 100000)
    assert r2 * r2 == 2
    assert 1 / r2 == r2 / 2
    assert rational_power(2, F(2, 3)) > rational_power(2, F(1, 2))


@given(st.integers(1, 50), st.integers(1, 50), st.integers(2, 5), st.integers(1, 9))
def test_format_parse_round_trip(n, d, k, c):
    x = radical(F(c, 3), F(n, d), k)
    assert parse_number(format_number(x)) == x


@given(st.integers(1, 10**6), st.integers(1, 10**6), st.integers(2, 5))
def test_root_enclosure_contains_root(n, d, k):
    box = root_enclosure(F(n, d), k, 64)
    assert box.width <= F(1, 2 ** 64)
    assert box.lo ** k <= F(n, d) <= box.hi ** k


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_log_enclosure_contains_float_log(n, d):
    box = log_enclosure(F(n, d), 80)
    assert box.width < F(1, 2 ** 70)
    assert float(box.lo) - 1e-12 <= math.log(n / d) <= float(box.hi) + 1e-12


def test_ln2_enclosure_digits():
    box = log_enclosure(2, 128)
    # ln 2 = 0.693147180559945309417232121458...
    assert box.contains(F(693147180559945309417232121458, 10**30)) or box.width < F(1, 10**30)
    assert abs(box.midpoint() - F(693147180559945309417232121458, 10**30)) < F(1, 10**29)


def test_decimal_rendering_rounds_half_even():
    assert to_decimal_string(F(1, 3)) == "0.333333333333"
    assert to_decimal_string(F(2, 3)) == "0.666666666667"
    assert to_decimal_string(F(1, 8), 2) == "0.12"
    assert to_decimal_string(F(3, 8), 2) == "0.38"
    assert to_decimal_string(F(0)) == "0"
    assert to_decimal_string(F(2)) == "2"


def test_interval_arithmetic_and_rejections():
    a = Interval(F(1), F(2))
    assert (a * -1) == Interval(F(-2), F(-1))
    assert (1 / a) == Interval(F(1, 2), F(1))
    with pytest.raises(ZeroDivisionError):
        Interval(F(-1), F(1)).reciprocal()
    assert Interval(F(1, 3), F(1, 3)).round_out(4).contains(F(1, 3))


def test_conversions():
    assert as_rational("3/4") == F(3, 4)
    assert as_extent("inf") == INFINITY
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(ValueError):
        as_extent(0)


def test_radical_enclosure_is_tight():
    r = rational_power(3, F(1, 3))
    box = r.enclose(100)
    assert isinstance(r, Radical)
    assert box.width <= F(1, 2 ** 99)
    assert box.lo < r < box.hi
