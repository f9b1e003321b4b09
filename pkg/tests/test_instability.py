from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nodalcurves.errors import InvalidInput
from nodalcurves.instability import Interval, instability_analyze, quadratic_roots, quantize, twisted_c2


def brute_feasible(lam, q, delta, quantized):
    """Directly test the raw inequalities at x = k*q/8, k integer.  Every
    threshold is a multiple of q/4 for integer lambda, so this grid holds all
    boundary points and a point strictly inside every gap.  Each inequality is
    multiplied through by 64/q to stay in integers."""
    hits = []
    for k in range(0, 8 * (lam - 1) + 2):
        ok = 4 * (lam - 1) < k < 8 * (lam - 1)
        ok = ok and k * k - 4 * (3 * lam - 2) * k + 32 * lam * (lam - 1) >= 0
        q2 = k * k - 8 * (lam - 1) * k + 16 * lam * (lam - 2)
        if 4 * delta < lam * (lam - 2) * q:
            ok = ok and q2 > 0
        elif 4 * delta == lam * (lam - 2) * q:
            ok = ok and q2 >= 0
        if quantized:
            ok = ok and k % 8 == 0
        if ok:
            hits.append(Fraction(k * q, 8))
    return hits


def test_reference_examples():
    r = instability_analyze(6, 5, 29)
    assert r.unstable and r.contradiction
    r = instability_analyze(6, 5, 30)
    assert not r.contradiction and r.equality_case["x"] == "15"
    assert r.equality_case["c2_twisted"] == "0" and r.equality_case["ci_prediction"]
    r = instability_analyze(7, 5, 44, ns_cyclic=True)
    assert r.quantized and r.contradiction


def test_stable_case_is_silent():
    r = instability_analyze(3, 1, 1)
    assert not r.unstable and not r.constraints and not r.contradiction


def test_rejects_out_of_scope():
    with pytest.raises(InvalidInput):
        instability_analyze(Fraction(3, 2), 5, 1)
    with pytest.raises(InvalidInput):
        instability_analyze(5, 0, 1)


def test_serialization_has_no_floats():
    d = instability_analyze(Fraction(7, 2), 5, 3).to_dict()
    text = repr(d)
    assert "." not in text.replace("...", "")
    assert {"lambda", "q", "delta", "constraints", "feasible_set", "contradiction"} <= set(d)


@pytest.mark.parametrize("lam", range(2, 11))
def test_quadratic_roots_exact(lam):
    for q in range(1, 11):
        lam_f, q_f = Fraction(lam), Fraction(q)
        r1 = quadratic_roots(1 / q_f, -(3 * lam_f - 2) / 2, lam_f * (lam_f - 1) * q_f / 2)
        assert r1 == (lam_f * q_f / 2, (lam_f - 1) * q_f) or lam == 2 and set(r1) == {q_f, q_f}
        r2 = quadratic_roots(1 / q_f, -(lam_f - 1), lam_f * (lam_f - 2) * q_f / 4)
        assert r2 == ((lam_f - 2) * q_f / 2, lam_f * q_f / 2)


@pytest.mark.parametrize("lam", range(2, 11))
def test_analyzer_agrees_with_brute_force(lam):
    for q in range(1, 11):
        top = lam * (lam - 2) * q // 4 + 1
        for delta in range(1, top + 1):
            for ns in (False, True):
                r = instability_analyze(lam, q, delta, ns_cyclic=ns)
                if not r.unstable:
                    continue
                hits = brute_feasible(lam, q, delta, r.quantized)
                assert r.contradiction == (not hits), (lam, q, delta, ns)
                for x in hits:
                    assert any(iv.contains(x) for iv in r.feasible_set)


@given(st.integers(2, 10), st.integers(1, 10))
def test_equality_case_twisted_c2(lam, q):
    if (lam * (lam - 2) * q) % 4:
        return
    delta = lam * (lam - 2) * q // 4
    if delta < 1:
        return
    assert twisted_c2(Fraction(lam), q, delta, Fraction(lam * q, 2)) == 0


def test_interval_helpers():
    a = Interval(Fraction(1), Fraction(3), True, False)
    assert a.contains(Fraction(1)) and not a.contains(Fraction(3))
    assert Interval(Fraction(2), Fraction(2), True, False).is_empty()
    pts = quantize([Interval(Fraction(12), Fraction(30))], Fraction(5))
    assert [p.lo for p in pts] == [15, 20, 25]
    assert str(Interval(None, Fraction(5, 2), False, True)) == "(-inf, 5/2]"
