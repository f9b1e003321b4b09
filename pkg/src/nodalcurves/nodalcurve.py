"""Nodal complete-intersection curves C = {F = G = 0} on S = {F = 0} in P^3.

Singular points are found by brute-force enumeration of P^3(F_q) and
re-verified with exact scalar arithmetic.  Only rational points over the
chosen field are found; nothing is claimed about the algebraic closure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import random

import numpy as np

from .batch import BatchField, projective_blocks
from .errors import DegenerateGeometry, HypothesisViolation, InvalidInput, SurfaceSingular
from .fieldcore import ExactMatrix, FieldCtx, FieldElem, mat_nullspace
from .intersection import (SurfaceCtx, frac_str, h0_of_multiple, pa_of_multiple, plane_genus,
                           severi_bound)
from .polyring import HomPoly, hessian, poly_eval, product, random_poly
from .zerodim import PointSet, conditions_imposed, format_point, normalize_point, point_key

MAX_FIELD_ORDER = 10**7
MAX_POINTS = 5 * 10**7

IRREDUCIBILITY_FLAG = "irreducibility_unverified"


def _check_char(ctx: FieldCtx, *degrees: int):
    p = ctx.characteristic
    if p == 0:
        return
    if p == 2 or p <= max(degrees):
        raise HypothesisViolation(
            f"characteristic {p} too small: need p > max(degrees) = {max(degrees)} and p != 2")


def _gradient(f: HomPoly, pt) -> list[FieldElem]:
    return [poly_eval(f.partial(i), pt) for i in range(f.nvars)]


def _minors_vanish(a: Sequence[FieldElem], b: Sequence[FieldElem]) -> bool:
    n = len(a)
    return all((a[i] * b[j] - a[j] * b[i]).is_zero() for i in range(n) for j in range(i + 1, n))


def is_singular_point(F: HomPoly, G: HomPoly, pt) -> bool:
    """F(P) = G(P) = 0 and every 2x2 minor of the Jacobian [grad F; grad G] vanishes."""
    if not (poly_eval(F, pt).is_zero() and poly_eval(G, pt).is_zero()):
        return False
    return _minors_vanish(_gradient(F, pt), _gradient(G, pt))


def singular_points(F: HomPoly, G: HomPoly, search_ctx: FieldCtx | None = None,
                    max_points: int = MAX_POINTS, chunk: int = 1 << 18) -> PointSet:
    """All points of P^3(F_q) where C = S . {G = 0} is singular.

    Raises :class:`SurfaceSingular` if S itself is singular at a point of C.
    """
    ctx = search_ctx or F.ctx
    if not ctx.is_finite:
        raise InvalidInput("singular-point search needs a finite field")
    if F.nvars != 4 or G.nvars != 4:
        raise InvalidInput("F and G must be forms in x0..x3")
    F, G = F.lift(ctx), G.lift(ctx)
    _check_char(ctx, F.degree, G.degree)
    q = ctx.order
    if q > MAX_FIELD_ORDER:
        raise InvalidInput(f"field order {q} exceeds the enumeration cap {MAX_FIELD_ORDER}")
    npts = q**3 + q**2 + q + 1
    if npts > max_points:
        raise InvalidInput(f"P^3(F_{q}) has {npts} points, above the cap {max_points}")

    bf = BatchField(ctx)
    first, second = (G, F) if len(G) <= len(F) else (F, G)
    dF = [F.partial(i) for i in range(4)]
    dG = [G.partial(i) for i in range(4)]
    found = []
    for coords in projective_blocks(bf, 4, chunk):
        mask = bf.is_zero(bf.evaluate(first, coords))
        if not mask.any():
            continue
        coords = [bf.take(c, mask) for c in coords]
        mask = bf.is_zero(bf.evaluate(second, coords))
        if not mask.any():
            continue
        coords = [bf.take(c, mask) for c in coords]
        cache: dict = {}
        gf = [bf.evaluate(d, coords, cache) for d in dF]
        gg = [bf.evaluate(d, coords, cache) for d in dG]
        sing = np.ones(bf.size(coords[0]), dtype=bool)
        for i in range(4):
            for j in range(i + 1, 4):
                minor = bf.sub(bf.mul(gf[i], gg[j]), bf.mul(gf[j], gg[i]))
                sing &= bf.is_zero(minor)
        if not sing.any():
            continue
        cols = [bf.to_elems(bf.take(c, sing)) for c in coords]
        found.extend(zip(*cols))

    points, surface_sing = [], []
    for pt in found:
        pt = normalize_point(ctx, pt)
        if not is_singular_point(F, G, pt):
            raise AssertionError(f"enumeration produced a non-singular point {format_point(pt)}")
        if all(x.is_zero() for x in _gradient(F, pt)):
            surface_sing.append(pt)
        else:
            points.append(pt)
    points.sort(key=point_key)
    if surface_sing:
        surface_sing.sort(key=point_key)
        raise SurfaceSingular(
            f"surface singular at {len(surface_sing)} point(s) of the curve, e.g. {format_point(surface_sing[0])}",
            surface_sing, points)
    return PointSet(ctx, points)


def node_classify(F: HomPoly, G: HomPoly, P: Sequence) -> str:
    """Return "node" or "degenerate" for a singular point P of C.

    With grad G(P) = c grad F(P), H = G - cF has a critical point on S at P;
    P is a node iff the Hessian of H restricted to the tangent plane of S is
    a nondegenerate binary quadratic form.  Computed in the affine chart of
    the first nonzero coordinate of P.
    """
    ctx = F.ctx
    if G.ctx != ctx:
        raise InvalidInput("F and G over different fields")
    _check_char(ctx, F.degree, G.degree)
    pt = normalize_point(ctx, P)
    if not (poly_eval(F, pt).is_zero() and poly_eval(G, pt).is_zero()):
        raise InvalidInput(f"{format_point(pt)} is not on C")
    gF, gG = _gradient(F, pt), _gradient(G, pt)
    piv = next((i for i, x in enumerate(gF) if not x.is_zero()), None)
    if piv is None:
        raise SurfaceSingular(f"surface singular at {format_point(pt)}", [pt])
    c = gG[piv] / gF[piv]
    if any(not (b - c * a).is_zero() for a, b in zip(gF, gG)):
        raise InvalidInput(f"grad G not parallel to grad F at {format_point(pt)}: not a singular point of C")

    chart = next(i for i, x in enumerate(pt) if not x.is_zero())
    others = [i for i in range(4) if i != chart]
    row = [gF[i] for i in others]
    if all(x.is_zero() for x in row):
        raise DegenerateGeometry("affine gradient of F vanishes (characteristic divides deg F?)")
    tangent = mat_nullspace(ExactMatrix.from_rows(ctx, [row]))

    def hess_at(f: HomPoly):
        if f.degree < 2:
            return [[ctx.zero()] * 4 for _ in range(4)]
        return [[poly_eval(h, pt) for h in hrow] for hrow in hessian(f)]

    hF, hG = hess_at(F), hess_at(G)
    hH = [[hG[i][j] - c * hF[i][j] for j in others] for i in others]

    def form(u, v):
        acc = ctx.zero()
        for a in range(3):
            for b in range(3):
                acc = acc + u[a] * hH[a][b] * v[b]
        return acc

    u, v = tangent
    det = form(u, u) * form(v, v) - form(u, v) * form(v, u)
    return "node" if not det.is_zero() else "degenerate"


@dataclass
class CurveRecord:
    surf: HomPoly
    curve: HomPoly
    ctx: FieldCtx
    nodes: PointSet
    delta_expected: int | None = None
    flags: list[str] = field(default_factory=lambda: [IRREDUCIBILITY_FLAG])

    @property
    def d(self) -> int:
        return self.surf.degree

    @property
    def n(self) -> int:
        return self.curve.degree

    @property
    def delta_found(self) -> int:
        return len(self.nodes)

    @property
    def complete(self) -> bool:
        return self.delta_expected is not None and self.delta_found == self.delta_expected


def make_curve_record(F: HomPoly, G: HomPoly, search_ctx: FieldCtx | None = None,
                      nodes: PointSet | None = None, delta_expected: int | None = None) -> CurveRecord:
    ctx = search_ctx or (nodes.ctx if nodes is not None else F.ctx)
    F, G = F.lift(ctx), G.lift(ctx)
    if nodes is None:
        nodes = singular_points(F, G, ctx)
    else:
        if nodes.ctx != ctx:
            raise InvalidInput("node list over a different field than the curve")
        for pt in nodes:
            if not is_singular_point(F, G, pt):
                raise InvalidInput(f"listed node {format_point(pt)} is not a singular point of C")
    rec = CurveRecord(F, G, ctx, nodes, delta_expected)
    if delta_expected is not None and rec.delta_found > delta_expected:
        rec.flags.append("more_singular_points_than_expected")
    if delta_expected is not None and rec.delta_found < delta_expected:
        rec.flags.append("partial_node_set")
    return rec


@dataclass
class SeveriReport:
    d: int
    n: int
    delta: int
    p_a: int
    g: int
    h0: int
    rank_at_n: int
    tangent_dim: int
    expected_dim: int
    smooth_expected: bool
    h1_IN: int
    bound_kind: str | None
    bound_value: str | None
    annotation: str
    flags: list[str]

    def to_dict(self) -> dict:
        out = dict(self.__dict__)
        out["h1"] = self.h1_IN
        return out


def _applicable_bound(d: int, n: int):
    reps = []
    if d >= 5 and n >= 2 * d - 8:
        reps.append(severi_bound("surface_p3", d=d, n=n))
    if d == 5 and n >= 3 and n % 2 == 1:
        reps.append(severi_bound("quintic_odd", p=n))
    if d == 4 and n >= 1:
        pa = pa_of_multiple(SurfaceCtx(4), n)
        if pa >= 2:
            reps.append(severi_bound("k3", pa=pa))
    if not reps:
        return None
    return max(reps, key=lambda r: r.bound_value)


def severi_report(rec: CurveRecord) -> SeveriReport:
    delta = rec.delta_found
    if delta < 1:
        raise InvalidInput("Severi analysis needs at least one node")
    for pt in rec.nodes:
        if node_classify(rec.surf, rec.curve, pt) != "node":
            raise DegenerateGeometry(f"singular point {format_point(pt)} is not a node")
    d, n = rec.d, rec.n
    pa = pa_of_multiple(SurfaceCtx(d), n)
    h0 = h0_of_multiple(d, n)
    rank = conditions_imposed(rec.nodes, n).rank
    tangent = h0 - rank - 1
    expected = h0 - 1 - delta
    h1 = delta - rank
    assert tangent - expected == h1 >= 0
    bound = _applicable_bound(d, n)
    if bound is None:
        kind, value = None, None
        note = "no node-count bound applies to this (d, n)"
    else:
        kind, value = bound.kind, frac_str(bound.bound_value)
        if bound.admits(delta):
            note = f"below bound {value} ({kind}): smoothness of codimension delta guaranteed"
        else:
            note = f"at/above bound {value} ({kind}): no guarantee"
    flags = list(rec.flags)
    if pa - delta < 0:
        flags.append("negative_geometric_genus: curve reducible or nodes miscounted")
    return SeveriReport(d, n, delta, pa, pa - delta, h0, rank, tangent, expected, h1 == 0, h1,
                        kind, value, note, flags)


@dataclass
class GLNReport:
    d: int
    n: int
    delta: int
    test_degree: int
    rank: int
    superabundance: int
    h0_nu_H: int
    gln: bool
    note: str
    flags: list[str]

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def gln_check(rec: CurveRecord) -> GLNReport:
    """Geometric linear normality via conditions imposed on |(n+d-5)H|."""
    d, n = rec.d, rec.n
    t = n + d - 5
    if d < 1 or n < 1 or t < 0:
        raise HypothesisViolation(f"test degree n + d - 5 = {t} must be >= 0")
    rep = conditions_imposed(rec.nodes, t)
    s = rep.superabundance
    note = ""
    if d == 5:
        note = "d = 5: test degree equals n, so GLN is equivalent to Severi-smoothness at C"
    return GLNReport(d, n, len(rec.nodes), t, rep.rank, s, 4 + s, s == 0, note, list(rec.flags))


def plane_severi_check(d: int, delta: int) -> dict:
    """Dimension and genus of the plane Severi variety V_{d,delta}."""
    if d < 3:
        raise HypothesisViolation(f"d >= 3 required (got {d})")
    pa = plane_genus(d)
    if not 1 <= delta <= pa:
        raise HypothesisViolation(f"delta must lie in [1, {pa}] (got {delta})")
    g = pa - delta
    lhs = d * d - 2 * delta
    rhs = 2 * g - 2 + 3 * d
    assert lhs == rhs
    return {"d": d, "delta": delta, "dimension": d * (d + 3) // 2 - delta, "genus": g,
            "p_a": pa, "degree_identity": {"lhs": lhs, "rhs": rhs, "holds": lhs == rhs}}


def surface_with_split_line_section(d: int, L1: HomPoly, L2: HomPoly, ctx: FieldCtx, seed,
                                    retries: int = 32) -> HomPoly:
    """Random degree-d form F whose restriction to the line {L1 = L2 = 0}
    vanishes at d distinct rational points: F = M1...Md + L1*A + L2*B, each
    M_i a random linear form through one chosen point of the line."""
    if not ctx.is_finite or ctx.order < d:
        raise InvalidInput("need a finite field with at least d elements")
    rows = [[L.coefficient(tuple(1 if v == u else 0 for v in range(4))) for u in range(4)] for L in (L1, L2)]
    kernel = mat_nullspace(ExactMatrix.from_rows(ctx, rows))
    if len(kernel) != 2:
        raise DegenerateGeometry("L1, L2 do not cut out a line")
    u, v = kernel
    for attempt in range(retries):
        rng = random.Random(f"split:{d}:{seed}:{attempt}")
        params = rng.sample(ctx.elements(), d)
        factors = []
        for s in params:
            pt = tuple(a + s * b for a, b in zip(u, v))
            R, S = random_poly(4, 1, ctx, rng), random_poly(4, 1, ctx, rng)
            sv = poly_eval(S, pt)
            if sv.is_zero():
                break
            factors.append(R - S.scale(poly_eval(R, pt) / sv))
        if len(factors) != d:
            continue
        # each factor must vanish at its point only, not on the whole line
        if any(poly_eval(M, u).is_zero() and poly_eval(M, v).is_zero() for M in factors):
            continue
        A, B = random_poly(4, d - 1, ctx, rng), random_poly(4, d - 1, ctx, rng)
        return product(factors) + L1 * A + L2 * B
    raise DegenerateGeometry(f"no split configuration in {retries} attempts")
