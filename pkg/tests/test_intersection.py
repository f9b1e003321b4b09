from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from nodalcurves.errors import HypothesisViolation, InvalidInput
from nodalcurves.intersection import (SurfaceCtx, as_fraction, frac_str, gln_bound, h0_of_multiple,
                                      obstruction_locus_dims, pa_of_multiple, plane_genus, severi_bound)


def h0_direct(d, m):
    # forms of degree m modulo multiples of the degree-d equation
    return comb(m + 3, 3) - (comb(m - d + 3, 3) if m >= d else 0)


def test_pa_examples():
    assert pa_of_multiple(SurfaceCtx(5), 6) == 106
    assert pa_of_multiple(SurfaceCtx(5), 1) == 6
    assert pa_of_multiple(SurfaceCtx(4), 1) == 3


def test_h0_examples():
    assert h0_of_multiple(5, 6) == 80
    assert h0_of_multiple(5, 4) == 35
    assert h0_of_multiple(5, 7) == 110


@pytest.mark.parametrize("d", range(1, 9))
def test_h0_matches_direct_count(d):
    for m in range(0, 15):
        assert h0_of_multiple(d, m) == h0_direct(d, m)
        if m < d:
            assert h0_of_multiple(d, m) == comb(m + 3, 3)


def test_surface_ctx_intersections():
    s = SurfaceCtx(5)
    assert (s.h_sq, s.k_coeff, s.k_sq) == (5, 1, 5)
    with pytest.raises(InvalidInput):
        SurfaceCtx(0)


def test_bound_spot_values():
    r = severi_bound("surface_p3", d=5, n=6)
    assert r.bound_value == 30 and r.strict and r.to_dict()["bound_value"] == "30"
    r = severi_bound("quintic_odd", p=7)
    assert r.bound_value == 45 and r.strict
    r = severi_bound("plane", d=3, delta=1)
    assert r.bound_value == 1 and not r.strict and r.dim_linear_system == 9 and r.expected_dim == 8
    assert gln_bound(5, 6).bound_value == 30
    assert gln_bound(5, 7, "quintic_odd").bound_value == 45
    sw = gln_bound(7, 5, "swapped")
    assert sw.bound_value == Fraction(175, 4) and sw.to_dict()["bound_value"] == "175/4"
    assert sw.max_admissible_delta == 43


def test_pluricanonical_branches():
    assert severi_bound("pluricanonical", p=7, K2=5).bound_value == Fraction(7 * 5 * 5, 4)
    assert severi_bound("pluricanonical", p=7, K2=5, ns_cyclic=True).bound_value == 45
    # even p: cyclic NS does not change the bound
    assert severi_bound("pluricanonical", p=6, K2=5, ns_cyclic=True).bound_value == 30
    assert severi_bound("pluricanonical", p=Fraction(5, 2), K2=4).bound_value == Fraction(5, 4)


def test_hypothesis_violations():
    with pytest.raises(HypothesisViolation):
        severi_bound("surface_p3", d=4, n=6)
    with pytest.raises(HypothesisViolation):
        severi_bound("surface_p3", d=6, n=3)
    with pytest.raises(HypothesisViolation):
        gln_bound(5, 6, "swapped")
    with pytest.raises(InvalidInput):
        severi_bound("bogus")


def test_verdicts_use_exact_comparison():
    assert severi_bound("surface_p3", d=5, n=6, delta=29).admits(29)
    assert not severi_bound("surface_p3", d=5, n=6, delta=30).admits(30)
    assert "no conclusion" in severi_bound("surface_p3", d=5, n=6, delta=30).verdict


def test_frac_str_and_no_floats():
    assert frac_str(Fraction(30)) == "30"
    assert frac_str(Fraction(-7, 4)) == "-7/4"
    with pytest.raises(InvalidInput):
        as_fraction(0.5)


@pytest.mark.parametrize("n", range(2, 40))
def test_surface_p3_equals_pluricanonical_on_quintics(n):
    a = severi_bound("surface_p3", d=5, n=n).bound_value
    b = severi_bound("pluricanonical", p=n, K2=5).bound_value
    assert a == b == Fraction(5 * n * (n - 2), 4)


@pytest.mark.parametrize("m", range(3, 12))
def test_obstruction_closed_forms(m):
    e = obstruction_locus_dims(m, "even")
    assert e.severi_lower == h0_direct(5, 2 * m) - 1 - 5 * (m * m - m) == 5 * m * m + 4
    o = obstruction_locus_dims(m, "odd")
    assert o.severi_lower == h0_direct(5, 2 * m + 1) - 1 - 5 * m * m == 5 * m * m + 5 * m + 4
    assert o.general_escapes == (m >= 5)


def test_obstruction_reference_numbers():
    e = obstruction_locus_dims(3, "even")
    assert (e.h0_normal_fixed_cone, e.family_upper, e.severi_lower, e.general_escapes) == (43, 47, 49, True)
    o4 = obstruction_locus_dims(4, "odd")
    assert (o4.severi_lower, o4.family_upper, o4.general_escapes) == (104, 107, False)
    o5 = obstruction_locus_dims(5, "odd")
    assert (o5.severi_lower, o5.family_upper, o5.general_escapes) == (154, 152, True)
    with pytest.raises(HypothesisViolation):
        obstruction_locus_dims(2, "even")


@given(st.integers(3, 40))
def test_plane_degree_identity(d):
    pa = plane_genus(d)
    assert pa == (d - 1) * (d - 2) // 2
    for delta in range(0, pa + 1):
        g = pa - delta
        assert d * d - 2 * delta == 2 * g - 2 + 3 * d
