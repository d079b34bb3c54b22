from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from marcinkiewicz.errors import ParseError
from marcinkiewicz.gauge import PowerGauge, min_linear
from marcinkiewicz.textio import dump_function, dump_gauge, parse_function, parse_gauge

from conftest import pl_gauges, rationals, step_functions


@given(step_functions())
def test_function_round_trip(f):
    assert parse_function(dump_function(f)) == f


@given(pl_gauges())
def test_pl_gauge_round_trip(psi):
    assert parse_gauge(dump_gauge(psi)) == psi


@given(st.sampled_from(["3/2", "2", "5/3"]), rationals(1, 4, 3).filter(bool))
def test_power_gauge_round_trip(p, c):
    psi = PowerGauge(Fraction(p), c)
    assert parse_gauge(dump_gauge(psi)) == psi


def test_serialized_rationals_are_p_over_q():
    text = dump_function(parse_function("gamma = 2\npiece = 0 1 3\n"))
    assert text == "gamma = 2/1\npiece = 0/1 1/1 3/1\ntail = 0/1\n"
    assert "knot = 1/2 1/1" in dump_gauge(min_linear(2, 1, 1))


def test_comments_and_integers_accepted():
    f = parse_function("# unit step\ngamma = inf\n\npiece = 0 1 1  # first\ntail = 0\n")
    assert f.pieces == ((0, 1, 1),)


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("gamma = 1\npiece = 0 0.5 1\n", 2, 11),
        ("gamma = 1\npiece = 0 1\n", 2, 11),
        ("gamma = 1\nwidth = 3\n", 2, 1),
        ("gamma = 1\ngamma = 2\n", 2, 1),
        ("gamma = 1\npiece = 0 2 1\n", 2, 9),
        ("piece = 0 1 1\n", 2, 1),
        ("gamma = 1\nnonsense\n", 2, 1),
        ("gamma = 1\npiece = 0 1/0 1\n", 2, 11),
    ],
)
def test_function_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as err:
        parse_function(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_gauge_parse_errors():
    with pytest.raises(ParseError, match="unknown gauge kind"):
        parse_gauge("kind = log\ngamma = 1\n")
    with pytest.raises(ParseError, match="not valid for a power gauge"):
        parse_gauge("kind = power\ngamma = inf\np = 2\nknot = 1 1\n")
    with pytest.raises(ParseError, match="missing 'p'"):
        parse_gauge("kind = power\ngamma = inf\n")
    with pytest.raises(ParseError):
        parse_gauge("kind = pl\ngamma = 1\nknot = 1/2 1\nknot = 3/4 2\n")  # convex
