from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from marcinkiewicz.errors import DomainMismatch, DomainOverflow, NoExactTransport
from marcinkiewicz.exact import INFINITY
from marcinkiewicz.step import (
    StepFunction,
    TransportMap,
    add,
    apply_transport,
    constant,
    dilate,
    disjoint,
    distribution,
    head_integral,
    head_integral_profile,
    indicator,
    is_decreasing,
    minimum,
    minus_plus,
    rearrange,
    submajorizes,
    transport_to_rearrangement,
    zero,
)

from conftest import rationals, step_functions
from oracles import cells_of, level_measure, rearrangement_value, sup_over_sets

F = Fraction
HALF = F(1, 2)


# -- distribution and rearrangement ------------------------------------------

def test_distribution_examples():
    assert distribution(indicator(0, HALF, 1, 2), 1) == HALF
    assert distribution(zero(1), 3) == 0
    assert distribution(constant(1, INFINITY), HALF) == INFINITY


def test_rearrange_examples():
    f = StepFunction(((0, 1, 1), (1, 2, 3)), 0, 2)
    assert rearrange(f) == StepFunction(((0, 1, 3), (1, 2, 1)), 0, 2)
    assert rearrange(indicator(HALF, 1, 1, 2)) == indicator(0, HALF, 1, 2)
    dec = StepFunction(((0, HALF, 3), (HALF, 1, 1)), 0, 1)
    assert rearrange(dec) == dec


def test_canonical_form_merges_and_absorbs_tail():
    f = StepFunction(((0, HALF, 1), (HALF, 1, 1)), 0, 1)
    assert f.pieces == () and f.tail == 1
    assert f == constant(1, 1)


@given(step_functions(), rationals(0, 5, 4))
def test_equimeasurability(f, s):
    assert distribution(rearrange(f), s) == distribution(f, s)
    assert distribution(f, s) == level_measure(cells_of(f), s)


@given(step_functions())
def test_rearrangement_matches_definition(f):
    fs = rearrange(f)
    assert is_decreasing(fs)
    assert rearrange(fs) == fs
    for a, b, v in fs.cells():
        probe = a if b == INFINITY else (a + b) / 2
        assert v == rearrangement_value(cells_of(f), probe)


# -- head integrals -------------------------------------------------------------

def test_head_integral_examples():
    assert head_integral(indicator(0, HALF, 1, 2), F(1, 4)) == HALF
    assert head_integral(zero(1), HALF) == 0
    h = head_integral_profile(indicator(0, HALF, 1, 2))
    assert h.knots == ((HALF, 1),) and h.final_slope == 0
    h = head_integral_profile(constant(1, INFINITY))
    assert h.knots == () and h.final_slope == 1 and h(F(7)) == 7


@given(step_functions(max_pieces=6), st.integers(0, 24))
def test_head_integral_is_sup_over_sets(f, k):
    top = 6 if f.gamma == INFINITY else f.gamma
    t = top * F(k, 24)
    assert head_integral(f, t) == sup_over_sets(cells_of(f), t)


@given(step_functions(), step_functions(), rationals(0, 4, 6), rationals(0, 4, 6))
def test_superadditivity(f1, f2, t1, t2):
    assume(f1.gamma == f2.gamma)
    g = add(f1, f2)
    assert head_integral(f1, t1) + head_integral(f2, t2) <= head_integral(g, t1 + t2)


@given(step_functions())
def test_profile_is_concave_with_slopes_from_rearrangement(f):
    h = head_integral_profile(f)
    slopes = h.slopes()
    assert all(x >= y for x, y in zip(slopes, slopes[1:]))
    assert h(0) == 0
    assert set(slopes) <= {v for _, _, v in rearrange(f).cells()}


# -- submajorization ------------------------------------------------------------

def test_submajorization_examples():
    u = indicator(0, HALF, 1, 2)
    assert submajorizes(u, u, 1)
    g, f = indicator(0, 1, 1), indicator(0, 1, 1, 2)
    assert not submajorizes(g, f)
    assert submajorizes(f, g)


@given(step_functions(gamma=F(1)), step_functions(gamma=F(1)), step_functions(gamma=F(1)))
def test_submajorization_is_transitive(f, g, h):
    if submajorizes(g, f) and submajorizes(h, g):
        assert submajorizes(h, f)
    if submajorizes(g, f) and submajorizes(f, g):
        assert head_integral_profile(f) == head_integral_profile(g)


# -- dilation and lattice -------------------------------------------------------

def test_dilation_examples():
    f = indicator(0, HALF, INFINITY, 2)
    assert dilate(f, 2) == indicator(0, 1, INFINITY, 2)
    assert dilate(f, 1) == f
    with pytest.raises(DomainOverflow):
        dilate(indicator(0, 1, 1), 2)
    assert dilate(indicator(0, 1, 1), 2, truncate=True) == constant(1, 1)


@given(step_functions(gamma=INFINITY), rationals(0, 8, 4))
def test_dilation_doubles_head_integrals(f, t):
    d = dilate(f, 2)
    assert head_integral(d, t) == 2 * head_integral(f, t / 2)
    assert rearrange(d) == dilate(rearrange(f), 2)


@given(step_functions(gamma=INFINITY, allow_tail=False))
def test_disjoint_copies_rearrange_to_dilation(f):
    fs = rearrange(f)
    shift = f.end
    copy = StepFunction(tuple((a + shift, b + shift, v) for a, b, v in f.pieces), 0, INFINITY)
    assert disjoint(f, copy)
    assert rearrange(add(f, copy)) == dilate(fs, 2)


def test_lattice_examples():
    u, v = indicator(0, HALF, 1, 2), indicator(HALF, 1, 1, 2)
    assert disjoint(u, v)
    assert add(u, v) == constant(2, 1)
    assert minimum(u, zero(1)) == zero(1)
    assert minus_plus(u, u) == zero(1)
    with pytest.raises(DomainMismatch):
        add(u, zero(2))


# -- transport ------------------------------------------------------------------

def test_transport_examples():
    dec = StepFunction(((0, HALF, 3),), 1, 1)
    assert transport_to_rearrangement(dec).is_identity
    g = StepFunction(((0, 1, 1), (1, 2, 3)), 0, 2)
    sigma = transport_to_rearrangement(g)
    assert sigma.segments == ((0, 1, 1), (1, 2, -1))
    assert apply_transport(sigma, rearrange(g)) == g
    assert apply_transport(sigma.inverse(), g) == rearrange(g)


@given(step_functions(gamma=F(1), max_pieces=6))
def test_transport_is_exact_on_finite_intervals(g):
    sigma = transport_to_rearrangement(g)
    assert apply_transport(sigma, rearrange(g)) == g


@given(step_functions(gamma=INFINITY))
def test_transport_on_the_half_line(g):
    if any(v < g.tail for _, _, v in g.pieces):
        with pytest.raises(NoExactTransport):
            transport_to_rearrangement(g)
    else:
        sigma = transport_to_rearrangement(g)
        assert apply_transport(sigma, rearrange(g)) == g


@given(step_functions(gamma=F(1)), step_functions(gamma=F(1)))
def test_transport_preserves_rearrangement(g, f):
    sigma = transport_to_rearrangement(g)
    assert rearrange(apply_transport(sigma, f)) == rearrange(f)


def test_transport_map_validates_partition():
    with pytest.raises(ValueError):
        TransportMap(((0, HALF, 0), (HALF, 1, -F(1, 4))), 1)
