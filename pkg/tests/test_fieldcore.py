import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nodalcurves.errors import FieldMismatch, InvalidInput
from nodalcurves.fieldcore import (ExactMatrix, FieldElem, embed, extend, field_make, is_irreducible,
                                   mat_nullspace, mat_rank, nullity, parse_field_spec)

FIELDS = [field_make("finite", 7), field_make("finite", 101), field_make("finite", 5, 2),
          field_make("finite", 3, 3), field_make("finite", 2, 4)]


def brute_det(rows):
    n = len(rows)
    ctx = rows[0][0].ctx
    total = ctx.zero()
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = ctx.one()
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total - term if inv % 2 else total + term
    return total


def test_prime_field_basic():
    K = field_make("finite", 101)
    assert K.order == 101 and K.characteristic == 101
    assert str(K) == "GF(101)"


def test_auto_modulus_f4():
    K = field_make("finite", 2, 2)
    assert K.modulus == (1, 1, 1)  # t^2 + t + 1


def test_auto_modulus_is_irreducible_and_smallest():
    for p, k in [(3, 2), (5, 2), (7, 3), (2, 3), (3, 4)]:
        K = field_make("finite", p, k)
        assert is_irreducible(K.modulus, p)
        code = sum(c * p**i for i, c in enumerate(K.modulus))
        for other in range(p**k, code):
            cand = tuple((other // p**i) % p for i in range(k + 1))
            if cand[-1] == 1:
                assert not is_irreducible(cand, p)


@pytest.mark.parametrize("args", [(4, 1, None), (2, 5, None), (3, 2, (0, 0, 1)), (9, 1, None)])
def test_field_make_rejects(args):
    p, k, mod = args
    with pytest.raises(InvalidInput):
        field_make("finite", p, k, mod)


def test_parse_field_spec_round_trip():
    for spec in ["101", "5,2", "3,3,1:2:0:1", "Q"]:
        K = parse_field_spec(spec)
        assert parse_field_spec(K.spec_string()) == K


def test_element_text_forms():
    K = field_make("finite", 3, 3)
    x = K.parse_raw("2:0:1")
    assert K.format_raw(x) == "2:0:1"
    Q = field_make("rationals")
    assert Q.format_raw(Q.parse_raw("-6/4")) == "-3/2"
    with pytest.raises(InvalidInput):
        Q.parse_raw("6/-4")
    with pytest.raises(InvalidInput):
        field_make("finite", 7).parse_raw("1/2x")


def test_identity_rank():
    K = field_make("finite", 7)
    assert mat_rank(ExactMatrix.from_rows(K, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3


def test_equal_rows_rank_one():
    K = field_make("finite", 7)
    assert mat_rank(ExactMatrix.from_rows(K, [[1, 2, 3, 4, 5]] * 2)) == 1


def test_vandermonde_rank_matches_brute_determinant():
    K = field_make("finite", 101)
    xs = [K(3), K(17), K(42), K(99)]
    rows = [[x**j for j in range(4)] for x in xs]
    assert not brute_det(rows).is_zero()
    assert mat_rank(ExactMatrix.from_rows(K, rows)) == 4


def test_empty_and_zero_matrices():
    K = field_make("finite", 5)
    assert mat_rank(ExactMatrix.from_rows(K, [], cols=3)) == 0
    assert mat_rank(ExactMatrix.from_rows(K, [[0, 0], [0, 0]])) == 0


def test_mixed_contexts_rejected():
    A, B = field_make("finite", 5), field_make("finite", 7)
    m = ExactMatrix(A, 1, 2, ((A(1), B(1)),))
    with pytest.raises(FieldMismatch):
        mat_rank(m)


def test_nullspace_annihilates():
    K = field_make("finite", 5, 2)
    rng = random.Random(3)
    elems = K.elements()
    rows = [[rng.choice(elems) for _ in range(5)] for _ in range(3)]
    m = ExactMatrix.from_rows(K, rows)
    ns = mat_nullspace(m)
    assert len(ns) == nullity(m) == 5 - mat_rank(m)
    for v in ns:
        for r in rows:
            assert sum((a * b for a, b in zip(r, v)), K.zero()).is_zero()


def test_rational_rank_large_entries():
    Q = field_make("rationals")
    big = 10**40
    rows = [[Fraction(big, 3), Fraction(1, 7), 2], [Fraction(2 * big, 3), Fraction(2, 7), 4], [1, 1, 1]]
    assert mat_rank(ExactMatrix.from_rows(Q, rows)) == 2


def test_embed_prime_into_extension():
    K = field_make("finite", 7)
    L = extend(K, 2)
    assert embed(K(3), L) * embed(K(5), L) == embed(K(15), L)
    with pytest.raises(FieldMismatch):
        embed(K(3), field_make("finite", 5, 2))


# -- properties ---------------------------------------------------------------------

field_st = st.sampled_from(FIELDS)


@st.composite
def elem_triples(draw):
    K = draw(field_st)
    idx = st.integers(0, K.order - 1)
    els = K.elements()
    return K, els[draw(idx)], els[draw(idx)], els[draw(idx)]


@given(elem_triples())
@settings(max_examples=150, deadline=None)
def test_field_axioms(t):
    K, a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == K.zero()
    if not a.is_zero():
        assert a * a.inverse() == K.one()


@given(elem_triples())
@settings(max_examples=100, deadline=None)
def test_frobenius_additive(t):
    K, a, b, _ = t
    assert (a + b).frobenius() == a.frobenius() + b.frobenius()
    assert a.frobenius() == a**K.p


@st.composite
def small_matrices(draw):
    K = draw(st.sampled_from(FIELDS[:3] + [field_make("rationals")]))
    r, c = draw(st.integers(0, 5)), draw(st.integers(1, 5))
    if K.is_finite:
        vals = st.integers(0, K.order - 1)
        els = K.elements()
        rows = [[els[draw(vals)] for _ in range(c)] for _ in range(r)]
    else:
        vals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
        rows = [[K(draw(vals)) for _ in range(c)] for _ in range(r)]
    return K, rows, c


@given(small_matrices())
@settings(max_examples=150, deadline=None)
def test_rank_transpose(m):
    K, rows, c = m
    A = ExactMatrix.from_rows(K, rows, cols=c)
    assert mat_rank(A) == mat_rank(A.transpose())


@given(small_matrices(), st.randoms(use_true_random=False))
@settings(max_examples=150, deadline=None)
def test_rank_invariant_under_scaling_and_permutation(m, rnd):
    K, rows, c = m
    A = ExactMatrix.from_rows(K, rows, cols=c)
    nonzero = [x for x in (K.elements() if K.is_finite else [K(Fraction(n, 3)) for n in range(1, 9)])
               if not x.is_zero()]
    scaled = []
    for row in rows:
        s = rnd.choice(nonzero)
        scaled.append([s * x for x in row])
    rnd.shuffle(scaled)
    assert mat_rank(ExactMatrix.from_rows(K, scaled, cols=c)) == mat_rank(A)


@given(st.fractions(), st.fractions())
def test_rationals_stay_reduced(a, b):
    Q = field_make("rationals")
    x = Q(a) * Q(b) + Q(a)
    v = x.v
    assert isinstance(v, Fraction) and v.denominator > 0
    assert FieldElem(Q, v) == x
