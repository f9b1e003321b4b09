import random

import pytest

from nodalcurves.constructor import (ExampleRecord, assess_nodes, build_even_example, build_example,
                                     build_odd_example, expected_delta_matches_bound, oracle_witness,
                                     verify_example)
from nodalcurves.errors import HypothesisViolation, InvalidInput
from nodalcurves.fieldcore import field_make, parse_field_spec
from nodalcurves.nodalcurve import is_singular_point
from nodalcurves.polyring import NotDivisible, divide_by_linear, poly_eval
from nodalcurves.zerodim import read_points

F13 = field_make("finite", 13)
F11 = field_make("finite", 11)


def points_of_X(Q, W, ctx, limit=400):
    """Rational points of {Q = W = 0} in P^4 away from the projection centre."""
    els = ctx.elements()
    rng = random.Random(0)
    out = []
    for _ in range(limit * 20):
        pt = [rng.choice(els) for _ in range(4)]
        if all(x.is_zero() for x in pt):
            continue
        for x4 in els:
            full = pt + [x4]
            if poly_eval(Q, full).is_zero() and poly_eval(W, full).is_zero():
                out.append(pt)
        if len(out) >= limit:
            break
    return out


def test_even_example_shape():
    rec = build_even_example(3, F13, 0)
    assert rec.Xprime.degree == 6 == rec.n and rec.expected_delta == 30
    assert rec.F.degree == 5 and rec.Q.degree == 2 and rec.W.degree == 3


def test_odd_example_shape():
    rec = build_odd_example(3, F11, 0)
    assert rec.n == 7 and rec.Xprime.degree == 7 and rec.expected_delta == 45
    with pytest.raises(NotDivisible):
        divide_by_linear(rec.Xprime, rec.L, 1)


def test_determinism():
    a, b = build_even_example(3, F13, 5), build_even_example(3, F13, 5)
    assert a.to_dict() == b.to_dict()
    assert verify_example(a, with_oracle=False) == verify_example(b, with_oracle=False)


def test_hypotheses_enforced():
    with pytest.raises(HypothesisViolation):
        build_even_example(2, F13, 0)
    with pytest.raises(HypothesisViolation):
        build_even_example(3, field_make("finite", 5), 0)
    with pytest.raises(HypothesisViolation):
        build_odd_example(3, field_make("finite", 7), 0)
    with pytest.raises(InvalidInput):
        build_example("neither", 3, F13, 0)


def test_projection_contains_image_of_X():
    rec = build_even_example(3, F13, 1)
    for pt in points_of_X(rec.Q, rec.W, F13, 60):
        assert poly_eval(rec.Xprime, pt).is_zero()


def test_odd_projection_contains_image_of_residual():
    rec = build_odd_example(3, F11, 2)
    l1, l2 = rec.plane
    for pt in points_of_X(rec.Q, rec.W, F11, 80):
        # points on the plane project into {L = 0}; the rest into X'
        assert poly_eval(rec.Xprime, pt).is_zero() or poly_eval(rec.L, pt).is_zero()


@pytest.mark.parametrize("m", range(3, 15))
def test_expected_delta_is_sharp_bound(m):
    assert expected_delta_matches_bound("even", m)
    assert expected_delta_matches_bound("odd", m)


def test_record_round_trip():
    for rec in (build_even_example(3, F13, 0), build_odd_example(3, F11, 0)):
        again = ExampleRecord.from_dict(rec.to_dict())
        assert again.to_dict() == rec.to_dict()


@pytest.mark.parametrize("seed", range(4))
def test_verify_contract(seed):
    rec = build_even_example(3, field_make("finite", 101), seed)
    rep = verify_example(rec, with_oracle=False)
    assert rep["status"] in {"complete", "partial", "empty", "degenerate"}
    sctx = parse_field_spec(rep["search_field"])
    nodes = read_points("\n".join(rep["nodes"]), sctx)
    assert len(nodes) <= rec.expected_delta or rep["status"] == "degenerate"
    for p in nodes:
        assert is_singular_point(rec.F, rec.Xprime, p)
    if rep["status"] in ("partial", "complete"):
        assert all(k == "node" for k in rep["node_kinds"]) and all(rep["on_double_curve"])
    if rep["status"] == "partial":
        assert rep["s_partial"] <= 1
    if rep["status"] == "complete":
        assert rep["severi"]["h1_IN"] == 1 and rep["gln"]["gln"] is False
    assert assess_nodes(rec, sctx, nodes)["verdict"] == rep["verdict"]


def test_oracle_witness():
    w = oracle_witness(build_even_example(3, F13, 0))
    assert w["type"] == [5, 3, 2] and w["num_points"] == 30 and w["passed"]
    assert (w["s_at_n"], w["s_at_n_plus_1"]) == (1, 0)
    w = oracle_witness(build_odd_example(3, F11, 0))
    assert w["num_points"] == 45 and w["socle_degree"] == 7 and w["passed"]


def test_extension_search():
    rec = build_even_example(3, field_make("finite", 7), 0)
    rep = verify_example(rec, search_k=2, with_oracle=False)
    assert rep["search_field"].startswith("7,2,")
    assert rep["status"] in {"complete", "partial", "empty", "degenerate"}
