"""Sparse homogeneous polynomials in 4 or 5 variables.

Terms are kept as a dict from exponent tuples to raw field values (see
:mod:`nodalcurves.fieldcore`); zero coefficients are never stored.  The
global monomial order is graded lex with x0 > x1 > ..., which for a
homogeneous polynomial is plain lex on the exponent tuple, descending.
"""

from __future__ import annotations

import random
import re
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import DegenerateGeometry, FieldMismatch, InvalidInput
from .fieldcore import FieldCtx, FieldElem, embed

Monomial = tuple  # tuple[int, ...]


class NotDivisible(DegenerateGeometry):
    pass


class ProjectionCenterOnHypersurface(DegenerateGeometry):
    pass


@lru_cache(maxsize=None)
def _monomials(nvars: int, t: int) -> tuple[Monomial, ...]:
    if nvars == 1:
        return ((t,),)
    out = []
    for e in range(t, -1, -1):
        for rest in _monomials(nvars - 1, t - e):
            out.append((e,) + rest)
    return tuple(out)


def monomial_basis(nvars: int, t: int) -> list[Monomial]:
    """Degree-t monomials in ``nvars`` variables, graded-lex descending."""
    if t < 0:
        raise InvalidInput("degree must be nonnegative")
    return list(_monomials(nvars, t))


class HomPoly:
    __slots__ = ("ctx", "nvars", "degree", "_terms")

    def __init__(self, ctx: FieldCtx, nvars: int, degree: int, terms: Mapping[Monomial, object] = (),
                 _raw: bool = False):
        self.ctx = ctx
        self.nvars = nvars
        self.degree = degree
        clean = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, c in items:
            mono = tuple(mono)
            if len(mono) != nvars:
                raise InvalidInput(f"monomial {mono} has wrong number of variables")
            if sum(mono) != degree:
                raise InvalidInput(f"inhomogeneous: monomial {mono} is not of degree {degree}")
            raw = c if _raw else _to_raw(ctx, c)
            if not ctx.raw_is_zero(raw):
                clean[mono] = raw
        self._terms = clean

    # construction helpers ---------------------------------------------------
    @classmethod
    def _from_raw(cls, ctx, nvars, degree, terms: dict) -> "HomPoly":
        obj = cls.__new__(cls)
        obj.ctx, obj.nvars, obj.degree = ctx, nvars, degree
        obj._terms = {m: c for m, c in terms.items() if not ctx.raw_is_zero(c)}
        return obj

    @classmethod
    def zero(cls, ctx, nvars, degree=0) -> "HomPoly":
        return cls._from_raw(ctx, nvars, degree, {})

    @classmethod
    def constant(cls, ctx, nvars, value) -> "HomPoly":
        return cls(ctx, nvars, 0, {(0,) * nvars: value})

    @classmethod
    def variable(cls, ctx, nvars, i) -> "HomPoly":
        mono = tuple(1 if j == i else 0 for j in range(nvars))
        return cls._from_raw(ctx, nvars, 1, {mono: ctx.raw_one()})

    @classmethod
    def linear(cls, ctx, coeffs: Sequence) -> "HomPoly":
        n = len(coeffs)
        terms = {tuple(1 if j == i else 0 for j in range(n)): c for i, c in enumerate(coeffs)}
        return cls(ctx, n, 1, terms)

    # accessors ----------------------------------------------------------------
    @property
    def terms(self) -> dict[Monomial, FieldElem]:
        return {m: FieldElem(self.ctx, self._terms[m]) for m in sorted(self._terms, reverse=True)}

    def raw_terms(self) -> dict:
        return dict(self._terms)

    def coefficient(self, mono: Monomial) -> FieldElem:
        return FieldElem(self.ctx, self._terms.get(tuple(mono), self.ctx.raw_zero()))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, HomPoly):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.ctx == other.ctx and self.nvars == other.nvars
        return (self.ctx == other.ctx and self.nvars == other.nvars and self.degree == other.degree
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.ctx, self.nvars, self.degree, frozenset(self._terms.items())))

    # ring operations --------------------------------------------------------------
    def _check(self, other: "HomPoly"):
        if other.ctx != self.ctx:
            raise FieldMismatch(f"polynomials over {self.ctx} and {other.ctx}")
        if other.nvars != self.nvars:
            raise InvalidInput("polynomials in different numbers of variables")

    def _addsub(self, other, sign):
        if isinstance(other, (int, FieldElem)):
            other = HomPoly.constant(self.ctx, self.nvars, other)
        self._check(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other if sign > 0 else -other
        if self.degree != other.degree:
            raise InvalidInput(f"inhomogeneous sum of degrees {self.degree} and {other.degree}")
        ctx = self.ctx
        out = dict(self._terms)
        op = ctx.raw_add if sign > 0 else ctx.raw_sub
        zero = ctx.raw_zero()
        for m, c in other._terms.items():
            out[m] = op(out.get(m, zero), c)
        return HomPoly._from_raw(ctx, self.nvars, self.degree, out)

    def __add__(self, other):
        return self._addsub(other, 1)

    def __sub__(self, other):
        return self._addsub(other, -1)

    def __neg__(self):
        ctx = self.ctx
        return HomPoly._from_raw(ctx, self.nvars, self.degree, {m: ctx.raw_neg(c) for m, c in self._terms.items()})

    def scale(self, c) -> "HomPoly":
        raw = _to_raw(self.ctx, c)
        ctx = self.ctx
        return HomPoly._from_raw(ctx, self.nvars, self.degree,
                                 {m: ctx.raw_mul(raw, v) for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self.scale(other)
        if not isinstance(other, HomPoly):
            return NotImplemented
        self._check(other)
        ctx = self.ctx
        out: dict = {}
        zero = ctx.raw_zero()
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = ctx.raw_add(out.get(m, zero), ctx.raw_mul(c1, c2))
        return HomPoly._from_raw(ctx, self.nvars, self.degree + other.degree, out)

    def __rmul__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> "HomPoly":
        result = HomPoly.constant(self.ctx, self.nvars, 1)
        for _ in range(e):
            result = result * self
        return result

    # evaluation and derivatives ----------------------------------------------------------
    def __call__(self, pt: Sequence) -> FieldElem:
        return poly_eval(self, pt)

    def partial(self, i: int) -> "HomPoly":
        ctx = self.ctx
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                coeff = ctx.raw_mul(ctx.raw_from_int(e), c)
                if not ctx.raw_is_zero(coeff):
                    nm = m[:i] + (e - 1,) + m[i + 1:]
                    out[nm] = coeff
        return HomPoly._from_raw(ctx, self.nvars, max(self.degree - 1, 0), out)

    def lift(self, target: FieldCtx) -> "HomPoly":
        """Same polynomial with coefficients embedded in an extension field."""
        if target == self.ctx:
            return self
        return HomPoly._from_raw(target, self.nvars, self.degree,
                                 {m: embed(FieldElem(self.ctx, c), target).v for m, c in self._terms.items()})

    def coefficients_in(self, var: int) -> dict[int, "HomPoly"]:
        """Write self = sum_j a_j * x_var^j; a_j live in the other variables."""
        groups: dict[int, dict] = {}
        for m, c in self._terms.items():
            e = m[var]
            groups.setdefault(e, {})[m[:var] + m[var + 1:]] = c
        return {e: HomPoly._from_raw(self.ctx, self.nvars - 1, self.degree - e, t) for e, t in groups.items()}

    def __str__(self):
        return poly_format(self)

    def __repr__(self):
        return f"HomPoly({self.ctx}, deg={self.degree}, {poly_format(self)!r})"


def _to_raw(ctx: FieldCtx, c):
    if isinstance(c, FieldElem):
        if c.ctx != ctx:
            raise FieldMismatch(f"coefficient over {c.ctx} in a polynomial over {ctx}")
        return c.v
    return ctx(c).v


# -- text I/O -----------------------------------------------------------------------

_VAR_RE = re.compile(r"x(\d+)(?:\^(\d+))?")
_COEF_RE = re.compile(r"(\([^)]*\)|\d+(?:/\d+)?)")


def _split_terms(s: str) -> list[tuple[int, str]]:
    terms = []
    depth = 0
    sign = 1
    cur = ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-":
            if cur:
                terms.append((sign, cur))
                cur = ""
                sign = 1
            sign = sign * (-1 if ch == "-" else 1)
            continue
        cur += ch
    if cur:
        terms.append((sign, cur))
    elif terms or s:
        raise InvalidInput(f"dangling operator in {s!r}")
    return terms


def poly_parse(text: str, ctx: FieldCtx, nvars: int) -> HomPoly:
    """Parse ``"x0^2 + 3*x1*x2"``-style text into a homogeneous polynomial."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise InvalidInput("empty polynomial")
    terms: dict[Monomial, object] = {}
    degree = None
    zero = ctx.raw_zero()
    for sign, body in _split_terms(s):
        pos = 0
        coeff = ctx.raw_one()
        m = _COEF_RE.match(body, pos)
        if m:
            tok = m.group(1)
            if tok.startswith("("):
                tok = tok[1:-1]
            coeff = ctx.parse_raw(tok)
            pos = m.end()
            if pos < len(body) and body[pos] == "*":
                pos += 1
        exps = [0] * nvars
        while pos < len(body):
            vm = _VAR_RE.match(body, pos)
            if not vm:
                raise InvalidInput(f"cannot parse term {body!r} at {body[pos:]!r}")
            idx = int(vm.group(1))
            if idx >= nvars:
                raise InvalidInput(f"unknown variable x{idx} (nvars={nvars})")
            exps[idx] += int(vm.group(2)) if vm.group(2) else 1
            pos = vm.end()
            if pos < len(body) and body[pos] == "*":
                pos += 1
                if pos == len(body):
                    raise InvalidInput(f"dangling '*' in {body!r}")
        if sign < 0:
            coeff = ctx.raw_neg(coeff)
        mono = tuple(exps)
        deg = sum(mono)
        if degree is None:
            degree = deg
        elif deg != degree and not ctx.raw_is_zero(coeff):
            raise InvalidInput(f"inhomogeneous polynomial: degrees {degree} and {deg}")
        terms[mono] = ctx.raw_add(terms.get(mono, zero), coeff)
    nonzero = {m: c for m, c in terms.items() if not ctx.raw_is_zero(c)}
    degrees = {sum(m) for m in nonzero}
    if len(degrees) > 1:
        raise InvalidInput(f"inhomogeneous polynomial: degrees {sorted(degrees)}")
    if nonzero:
        degree = degrees.pop()
    return HomPoly._from_raw(ctx, nvars, degree or 0, nonzero)


def _format_coeff(ctx: FieldCtx, c) -> str:
    s = ctx.format_raw(c)
    return f"({s})" if ctx.k > 1 else s


def poly_format(f: HomPoly) -> str:
    """Canonical text: graded-lex descending, coefficient 1 omitted."""
    if f.is_zero():
        return "0"
    ctx = f.ctx
    pieces = []
    for mono in sorted(f._terms, reverse=True):
        c = f._terms[mono]
        negative = ctx.kind == "rationals" and c < 0
        if negative:
            c = -c
        varpart = "*".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(mono) if e)
        one = c == ctx.raw_one()
        if not varpart:
            body = _format_coeff(ctx, c)
        elif one:
            body = varpart
        else:
            body = f"{_format_coeff(ctx, c)}*{varpart}"
        if not pieces:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append((" - " if negative else " + ") + body)
    return "".join(pieces)


# -- evaluation -------------------------------------------------------------------

def poly_eval(f: HomPoly, pt: Sequence) -> FieldElem:
    if len(pt) != f.nvars:
        raise InvalidInput(f"point has {len(pt)} coordinates, expected {f.nvars}")
    ctx = f.ctx
    coords = []
    for x in pt:
        if isinstance(x, FieldElem):
            if x.ctx != ctx:
                raise FieldMismatch(f"point over {x.ctx}, polynomial over {ctx}")
            coords.append(x.v)
        else:
            coords.append(ctx(x).v)
    powers = [[ctx.raw_one()] for _ in coords]
    for i, x in enumerate(coords):
        for _ in range(f.degree):
            powers[i].append(ctx.raw_mul(powers[i][-1], x))
    total = ctx.raw_zero()
    for mono, c in f._terms.items():
        term = c
        for i, e in enumerate(mono):
            if e:
                term = ctx.raw_mul(term, powers[i][e])
        total = ctx.raw_add(total, term)
    return FieldElem(ctx, total)


def poly_partials(f: HomPoly) -> list[HomPoly]:
    if f.degree < 1:
        raise InvalidInput("partials need degree >= 1")
    return [f.partial(i) for i in range(f.nvars)]


def hessian(f: HomPoly) -> list[list[HomPoly]]:
    first = [f.partial(i) for i in range(f.nvars)]
    return [[g.partial(j) for j in range(f.nvars)] for g in first]


# -- elimination and division -----------------------------------------------------------

def sylvester_resultant(f: HomPoly, g: HomPoly, var_index: int) -> HomPoly:
    """Resultant of f and g with respect to ``x_{var_index}``.

    Both inputs must contain the pure power of the eliminated variable, i.e.
    the point where only that coordinate is nonzero lies on neither
    hypersurface.  The result is homogeneous of degree deg f * deg g in the
    remaining variables.
    """
    f._check(g)
    df, dg = f.degree, g.degree
    pure_f = tuple(df if i == var_index else 0 for i in range(f.nvars))
    pure_g = tuple(dg if i == var_index else 0 for i in range(g.nvars))
    if f.coefficient(pure_f).is_zero() or g.coefficient(pure_g).is_zero():
        raise ProjectionCenterOnHypersurface(
            f"x{var_index}^deg missing: projection center lies on a hypersurface")
    ca = f.coefficients_in(var_index)
    cb = g.coefficients_in(var_index)
    n = df + dg
    # row r < dg holds f's coefficients (highest power first) shifted by r
    matrix: list[list[HomPoly | None]] = [[None] * n for _ in range(n)]
    for r in range(dg):
        for j in range(df + 1):
            matrix[r][r + j] = ca.get(df - j)
    for r in range(df):
        for j in range(dg + 1):
            matrix[dg + r][r + j] = cb.get(dg - j)
    det = _laplace_det(matrix, f.ctx, f.nvars - 1)
    if det is None:
        return HomPoly.zero(f.ctx, f.nvars - 1, df * dg)
    if det.is_zero():
        det.degree = df * dg
    return det


def _laplace_det(matrix, ctx, nvars) -> HomPoly | None:
    """Cofactor expansion along rows, memoised on the set of used columns."""
    n = len(matrix)
    memo: dict[int, HomPoly | None] = {}

    def rec(row: int, used: int):
        if row == n:
            return HomPoly.constant(ctx, nvars, 1)
        if used in memo:
            return memo[used]
        acc = None
        sign_pos = 0
        for c in range(n):
            if used >> c & 1:
                continue
            entry = matrix[row][c]
            if entry is not None and not entry.is_zero():
                sub = rec(row + 1, used | (1 << c))
                if sub is not None and not sub.is_zero():
                    term = entry * sub
                    if sign_pos % 2:
                        term = -term
                    acc = term if acc is None else acc + term
            sign_pos += 1
        memo[used] = acc
        return acc

    return rec(0, 0)


def divide_by_linear(f: HomPoly, L: HomPoly, times: int = 1) -> HomPoly:
    """Exact quotient f / L^times; raises :class:`NotDivisible` otherwise."""
    if L.degree != 1 or L.is_zero():
        raise InvalidInput("divisor must be a nonzero linear form")
    f._check(L)
    ctx = f.ctx
    lead = max(L._terms)  # lex-leading monomial: the lowest-index variable present
    v = lead.index(1)
    inv = ctx.raw_inv(L._terms[lead])
    q = f
    for _ in range(times):
        if q.degree < 1 and not q.is_zero():
            raise NotDivisible("degree too small for the requested division")
        rem = dict(q._terms)
        quot: dict = {}
        while rem:
            m = max(rem)
            if m[v] == 0:
                raise NotDivisible(f"{poly_format(f)} is not divisible by ({poly_format(L)})^{times}")
            c = ctx.raw_mul(rem[m], inv)
            qm = m[:v] + (m[v] - 1,) + m[v + 1:]
            quot[qm] = c
            for lm, lc in L._terms.items():
                tm = tuple(a + b for a, b in zip(qm, lm))
                nv = ctx.raw_sub(rem.get(tm, ctx.raw_zero()), ctx.raw_mul(c, lc))
                if ctx.raw_is_zero(nv):
                    rem.pop(tm, None)
                else:
                    rem[tm] = nv
        q = HomPoly._from_raw(ctx, f.nvars, q.degree - 1, quot)
    return q


# -- random generation -------------------------------------------------------------

def _raw_random(ctx: FieldCtx, rng: random.Random):
    if ctx.kind == "rationals":
        from fractions import Fraction
        return Fraction(rng.randint(-9, 9))
    if ctx.k == 1:
        return rng.randrange(ctx.p)
    return tuple(rng.randrange(ctx.p) for _ in range(ctx.k))


def random_poly(nvars: int, t: int, ctx: FieldCtx, seed) -> HomPoly:
    """Seeded random form of degree t; every coefficient drawn independently.

    Over F_q coefficients are uniform; over the rationals they are integers in
    [-9, 9].  ``seed`` may be an int, a str, or a :class:`random.Random`.
    """
    if t < 0:
        raise InvalidInput("degree must be nonnegative")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    terms = {m: _raw_random(ctx, rng) for m in _monomials(nvars, t)}
    return HomPoly._from_raw(ctx, nvars, t, terms)


def variables(ctx: FieldCtx, nvars: int) -> list[HomPoly]:
    return [HomPoly.variable(ctx, nvars, i) for i in range(nvars)]


def product(polys: Iterable[HomPoly]) -> HomPoly:
    polys = list(polys)
    out = polys[0]
    for g in polys[1:]:
        out = out * g
    return out


def basis_size(nvars: int, t: int) -> int:
    return comb(t + nvars - 1, nvars - 1) if t >= 0 else 0
