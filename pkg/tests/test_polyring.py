import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from nodalcurves.errors import InvalidInput
from nodalcurves.fieldcore import field_make
from nodalcurves.polyring import (HomPoly, NotDivisible, ProjectionCenterOnHypersurface, divide_by_linear,
                                  monomial_basis, poly_eval, poly_format, poly_parse, poly_partials,
                                  random_poly, sylvester_resultant, variables)

F7 = field_make("finite", 7)
F5 = field_make("finite", 5)
F101 = field_make("finite", 101)
F25 = field_make("finite", 5, 2)
QQ = field_make("rationals")


def test_parse_simple():
    f = poly_parse("x0^2 + 3*x1*x2", F7, 4)
    assert f.degree == 2 and len(f) == 2


def test_parse_inhomogeneous_rejected():
    with pytest.raises(InvalidInput):
        poly_parse("x0 + x1^2", F7, 4)


def test_parse_unknown_variable_rejected():
    with pytest.raises(InvalidInput):
        poly_parse("x0 + x4", F7, 4)


def test_negative_coefficient_reduced():
    f = poly_parse("x0^5 - x1^5", F101, 4)
    assert sorted(int(c.v) for c in f.terms.values()) == [1, 100]
    assert poly_format(f) == "x0^5 + 100*x1^5"


def test_parse_optional_star_and_extension_coefficients():
    f = poly_parse("2x0x1 + (1:3)*x2^2", F25, 4)
    assert f.coefficient((1, 1, 0, 0)) == F25(2)
    assert f.coefficient((0, 0, 2, 0)).v == (1, 3)


def test_eval_examples():
    assert poly_eval(poly_parse("x0*x1", F7, 4), [1, 1, 0, 0]) == 1
    assert poly_eval(poly_parse("x0^2", F5, 4), [3, 0, 0, 0]) == 4


def test_partials_examples():
    d = poly_partials(poly_parse("x0^3", F7, 4))
    assert d[0] == poly_parse("3*x0^2", F7, 4)
    assert all(x.is_zero() for x in d[1:])
    assert poly_parse("x0^7", F7, 4).partial(0).is_zero()


def test_monomial_basis_sizes():
    assert len(monomial_basis(4, 1)) == 4
    assert len(monomial_basis(4, 6)) == 84 == comb(9, 3)
    assert len(monomial_basis(5, 2)) == 15 == comb(6, 4)
    basis = monomial_basis(4, 3)
    assert basis == sorted(basis, reverse=True)  # lex descending within one degree


def test_linear_resultant():
    f = poly_parse("x4 - x0", F101, 5)
    g = poly_parse("x4 - x1", F101, 5)
    r = sylvester_resultant(f, g, 4)
    target = poly_parse("x0 - x1", F101, 4)
    assert r == target or r == -target


def test_quadratic_resultant_is_substitution():
    f = poly_parse("x4^2 - x0*x1", F101, 5)
    g = poly_parse("x4 - x2", F101, 5)
    r = sylvester_resultant(f, g, 4)
    target = poly_parse("x2^2 - x0*x1", F101, 4)
    c = r.coefficient((0, 0, 2, 0))
    assert r == target.scale(c)


def test_resultant_degree():
    f, g = random_poly(5, 2, F101, 1), random_poly(5, 3, F101, 2)
    assert sylvester_resultant(f, g, 4).degree == 6


def test_resultant_needs_pure_power():
    f = poly_parse("x0*x4 + x1^2", F101, 5)
    with pytest.raises(ProjectionCenterOnHypersurface):
        sylvester_resultant(f, random_poly(5, 2, F101, 0), 4)


def test_divide_examples():
    assert divide_by_linear(poly_parse("x0^2*x1", F7, 4), poly_parse("x0", F7, 4), 2) == poly_parse("x1", F7, 4)
    with pytest.raises(NotDivisible):
        divide_by_linear(poly_parse("x0*x1", F7, 4), poly_parse("x2", F7, 4))


def test_random_poly_determinism():
    assert random_poly(4, 3, F101, 7) == random_poly(4, 3, F101, 7)
    assert random_poly(4, 3, F101, 7) != random_poly(4, 3, F101, 8)
    c = random_poly(4, 0, F101, 1)
    assert c.degree == 0 and set(c.terms) <= {(0, 0, 0, 0)}


def test_euler_relation_degree4():
    f = random_poly(4, 4, F101, 11)
    xs = variables(F101, 4)
    lhs = sum((x * d for x, d in zip(xs, poly_partials(f))), HomPoly.zero(F101, 4, 4))
    assert lhs == f.scale(4)


def test_mismatched_degrees_rejected():
    with pytest.raises(InvalidInput):
        poly_parse("x0", F7, 4) + poly_parse("x0^2", F7, 4)


# -- properties ---------------------------------------------------------------------

FIELDS = [F7, F101, F25, QQ, field_make("finite", 3, 2)]


@given(st.sampled_from(FIELDS), st.integers(0, 4), st.integers(0, 10**6), st.sampled_from([4, 5]))
@settings(max_examples=80, deadline=None)
def test_parse_print_round_trip(K, t, seed, nvars):
    f = random_poly(nvars, t, K, seed)
    assert poly_parse(poly_format(f), K, nvars) == f


@given(st.sampled_from(FIELDS), st.integers(1, 4), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_euler_relation(K, t, seed):
    f = random_poly(4, t, K, seed)
    xs = variables(K, 4)
    lhs = sum((x * d for x, d in zip(xs, poly_partials(f))), HomPoly.zero(K, 4, t))
    assert lhs == f.scale(t)


@given(st.integers(0, 4), st.integers(0, 10**6), st.fractions(min_value=-7, max_value=7).filter(bool))
@settings(max_examples=60, deadline=None)
def test_homogeneity_over_q(t, seed, lam):
    f = random_poly(4, t, QQ, seed)
    rng = random.Random(seed)
    pt = [QQ(rng.randint(-5, 5)) for _ in range(4)]
    assert poly_eval(f, [QQ(lam) * x for x in pt]) == QQ(lam) ** t * poly_eval(f, pt)


@given(st.sampled_from(FIELDS), st.integers(0, 3), st.integers(1, 2), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_divide_inverts_multiply(K, t, times, seed):
    g = random_poly(4, t, K, seed)
    L = random_poly(4, 1, K, seed + 1)
    if L.is_zero():
        return
    assert divide_by_linear(g * L**times, L, times) == g


@given(st.integers(0, 10**6), st.integers(1, 2), st.integers(1, 3))
@settings(max_examples=25, deadline=None)
def test_resultant_vanishes_at_common_zeros(seed, da, db):
    K = F7
    f, g = random_poly(5, da, K, seed), random_poly(5, db, K, seed + 7)
    try:
        r = sylvester_resultant(f, g, 4)
    except ProjectionCenterOnHypersurface:
        return
    assert r.degree == da * db
    els = K.elements()
    rng = random.Random(seed)
    for _ in range(60):
        pt = [rng.choice(els) for _ in range(4)]
        for x4 in els:
            full = pt + [x4]
            if poly_eval(f, full).is_zero() and poly_eval(g, full).is_zero():
                assert poly_eval(r, pt).is_zero()


@given(st.sampled_from(FIELDS[:3]), st.integers(0, 3), st.integers(0, 3), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_ring_ops_preserve_homogeneity(K, a, b, seed):
    f, g = random_poly(4, a, K, seed), random_poly(4, b, K, seed + 1)
    h = f * g
    assert all(sum(m) == a + b for m in h.terms)
    if a:
        assert all(sum(m) == a - 1 for m in f.partial(0).terms)
