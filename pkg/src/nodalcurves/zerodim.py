"""Finite point sets in P^3 and the conditions they impose on forms.

The rank of the evaluation matrix (points x degree-t monomials) is the number
of conditions a reduced point set imposes on |O(t)|; its defect from the
number of points is the superabundance s = h^1(I_N(t)).  For a complete
intersection of type (a, b, c) the Koszul resolution predicts the same
number, which gives an independent oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .errors import DegenerateGeometry, FieldMismatch, InvalidInput
from .fieldcore import ExactMatrix, FieldCtx, FieldElem, mat_nullspace, mat_rank
from .polyring import HomPoly, _monomials, random_poly


def normalize_point(ctx: FieldCtx, coords: Sequence) -> tuple[FieldElem, ...]:
    """Scale so the first nonzero coordinate is 1."""
    pt = [ctx(c) for c in coords]
    lead = next((x for x in pt if not x.is_zero()), None)
    if lead is None:
        raise InvalidInput("the zero vector is not a projective point")
    inv = lead.inverse()
    return tuple(x * inv for x in pt)


def point_key(pt: Sequence[FieldElem]):
    return tuple(x.sort_key() for x in pt)


class PointSet:
    """Reduced projective points over one field; duplicates are rejected."""

    def __init__(self, ctx: FieldCtx, points: Iterable[Sequence], nvars: int = 4):
        self.ctx = ctx
        self.nvars = nvars
        normed = []
        seen = set()
        for raw in points:
            if len(raw) != nvars:
                raise InvalidInput(f"point {raw} does not have {nvars} coordinates")
            for c in raw:
                if isinstance(c, FieldElem) and c.ctx != ctx:
                    raise FieldMismatch(f"coordinate over {c.ctx} in a point set over {ctx}")
            pt = normalize_point(ctx, raw)
            if pt in seen:
                raise InvalidInput(f"duplicate point {format_point(pt)}")
            seen.add(pt)
            normed.append(pt)
        self.points: tuple[tuple[FieldElem, ...], ...] = tuple(normed)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def sorted(self) -> "PointSet":
        return PointSet(self.ctx, sorted(self.points, key=point_key), self.nvars)

    def without(self, index: int) -> "PointSet":
        return PointSet(self.ctx, self.points[:index] + self.points[index + 1:], self.nvars)


@dataclass(frozen=True)
class ConditionsReport:
    t: int
    num_points: int
    ambient_dim: int
    rank: int
    superabundance: int
    independent: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def evaluation_matrix(pts: PointSet, t: int) -> ExactMatrix:
    ctx = pts.ctx
    monos = _monomials(pts.nvars, t) if t >= 0 else ()
    rows = []
    for pt in pts.points:
        powers = []
        for x in pt:
            pw = [ctx.raw_one()]
            for _ in range(max(t, 0)):
                pw.append(ctx.raw_mul(pw[-1], x.v))
            powers.append(pw)
        row = []
        for mono in monos:
            v = ctx.raw_one()
            for i, e in enumerate(mono):
                if e:
                    v = ctx.raw_mul(v, powers[i][e])
            row.append(FieldElem(ctx, v))
        rows.append(tuple(row))
    return ExactMatrix(ctx, len(rows), len(monos), tuple(rows))


def conditions_imposed(pts: PointSet, t: int) -> ConditionsReport:
    """Conditions imposed by the points on forms of degree t.

    Negative t is allowed and means the zero space of forms.
    """
    ambient = comb(t + pts.nvars - 1, pts.nvars - 1) if t >= 0 else 0
    rank = mat_rank(evaluation_matrix(pts, t)) if len(pts) and ambient else 0
    s = len(pts) - rank
    return ConditionsReport(t, len(pts), ambient, rank, s, s == 0)


def _B(s: int) -> int:
    return comb(s + 3, 3) if s >= 0 else 0


@dataclass(frozen=True)
class KoszulPrediction:
    h0_ideal: int
    conditions_predicted: int
    superabundance_predicted: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def koszul_ci_h0(a: int, b: int, c: int, t: int) -> KoszulPrediction:
    """Hilbert-function count for a complete intersection of type (a, b, c) in P^3."""
    if min(a, b, c) < 1:
        raise InvalidInput("complete-intersection degrees must be >= 1")
    h0 = (_B(t - a) + _B(t - b) + _B(t - c)
          - _B(t - a - b) - _B(t - a - c) - _B(t - b - c) + _B(t - a - b - c))
    cond = _B(t) - h0
    return KoszulPrediction(h0, cond, a * b * c - cond)


def grid_ci_points(lin_a: Sequence[HomPoly], lin_b: Sequence[HomPoly], lin_c: Sequence[HomPoly],
                   ctx: FieldCtx) -> PointSet:
    """Points of {prod lin_a = prod lin_b = prod lin_c = 0} for products of
    linear forms, i.e. one point per triple (l_a, l_b, l_c).

    Raises :class:`DegenerateGeometry` if a triple fails to meet in a single
    point or two triples give the same point.
    """
    pts = []
    seen = {}
    for i, la in enumerate(lin_a):
        for j, lb in enumerate(lin_b):
            for k, lc in enumerate(lin_c):
                forms = (la, lb, lc)
                for f in forms:
                    if f.degree != 1 or f.ctx != ctx or f.nvars != 4:
                        raise InvalidInput("grid CI needs linear forms in 4 variables over ctx")
                m = ExactMatrix.from_rows(ctx, [[f.coefficient(tuple(1 if v == u else 0 for v in range(4)))
                                                for u in range(4)] for f in forms])
                kernel = mat_nullspace(m)
                if len(kernel) != 1:
                    raise DegenerateGeometry(f"forms {(i, j, k)} do not meet in a single point")
                pt = normalize_point(ctx, kernel[0])
                if pt in seen:
                    raise DegenerateGeometry(f"triples {seen[pt]} and {(i, j, k)} meet in the same point")
                seen[pt] = (i, j, k)
                pts.append(pt)
    return PointSet(ctx, pts)


def random_grid_ci(a: int, b: int, c: int, ctx: FieldCtx, seed, retries: int = 32) -> PointSet:
    """Grid CI from seeded random linear forms, re-drawing on degeneracy."""
    for attempt in range(retries):
        rng = random.Random(f"grid:{seed}:{attempt}")
        forms = [[random_poly(4, 1, ctx, rng) for _ in range(n)] for n in (a, b, c)]
        try:
            return grid_ci_points(*forms, ctx)
        except DegenerateGeometry:
            continue
    raise DegenerateGeometry(f"no transverse grid configuration in {retries} attempts")


@dataclass(frozen=True)
class SocleReport:
    degrees: tuple[int, int, int]
    socle_degree: int
    at_socle: ConditionsReport
    above_socle: ConditionsReport
    passed: bool

    def to_dict(self) -> dict:
        return {"degrees": list(self.degrees), "socle_degree": self.socle_degree,
                "at_socle": self.at_socle.to_dict(), "above_socle": self.above_socle.to_dict(),
                "passed": self.passed}


def socle_report(pts: PointSet, a: int, b: int, c: int) -> SocleReport:
    if len(pts) != a * b * c:
        raise InvalidInput(f"expected {a * b * c} points for a CI of type {(a, b, c)}")
    t = a + b + c - 4
    lo, hi = conditions_imposed(pts, t), conditions_imposed(pts, t + 1)
    return SocleReport((a, b, c), t, lo, hi, lo.superabundance == 1 and hi.superabundance == 0)


def socle_check(pts: PointSet, a: int, b: int, c: int) -> bool:
    """s = 1 at degree a+b+c-4 and s = 0 one degree higher."""
    return socle_report(pts, a, b, c).passed


# -- point files ----------------------------------------------------------------

def format_point(pt: Sequence[FieldElem]) -> str:
    return ",".join(str(x) for x in pt)


def parse_point(line: str, ctx: FieldCtx, nvars: int = 4) -> tuple[FieldElem, ...]:
    toks = [t.strip() for t in line.split(",")]
    if len(toks) != nvars:
        raise InvalidInput(f"point line {line!r} needs {nvars} comma-separated coordinates")
    return tuple(FieldElem(ctx, ctx.parse_raw(t)) for t in toks)


def read_points(text: str, ctx: FieldCtx, nvars: int = 4) -> PointSet:
    pts = []
    for line in text.splitlines():
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        pts.append(parse_point(s, ctx, nvars))
    return PointSet(ctx, pts, nvars)


def write_points(pts: PointSet) -> str:
    return "".join(format_point(pt) + "\n" for pt in pts.points)
