"""Exact coefficient fields and dense linear algebra over them.

Three kinds of coefficient domain are supported:

* the rationals, with elements stored as reduced :class:`fractions.Fraction`;
* prime fields F_p, with elements stored as ints in ``range(p)``;
* extension fields F_{p^k} = F_p[t]/(modulus), 2 <= k <= 4, with elements
  stored as coefficient tuples ``(c0, ..., c_{k-1})`` on the basis 1, t, ...

A :class:`FieldCtx` knows how to do arithmetic on these raw representations;
:class:`FieldElem` wraps a raw value together with its context and is what
the public API hands out.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import FieldMismatch, InvalidInput

MAX_EXTENSION_DEGREE = 4


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# -- univariate polynomials over F_p, coefficient lists low-to-high ----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _upoly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo b over F_p (b nonzero, trimmed)."""
    r = [c % p for c in a]
    _trim(r)
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    while len(r) - 1 >= db and r:
        c = r[-1] * inv_lead % p
        shift = len(r) - 1 - db
        for i, bc in enumerate(b):
            r[shift + i] = (r[shift + i] - c * bc) % p
        _trim(r)
    return r


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= k/2 over F_p."""
    k = len(modulus) - 1
    if k < 1 or modulus[-1] % p == 0:
        return False
    for deg in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _upoly_mod(modulus, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k, ordering by sum c_i p^i."""
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        cand = tuple(low) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


# -- contexts -----------------------------------------------------------------

@dataclass(frozen=True)
class FieldCtx:
    kind: str  # "rationals" | "finite"
    p: int | None = None
    k: int = 1
    modulus: tuple[int, ...] | None = None  # low-to-high, monic, length k+1

    # raw-value arithmetic -----------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "finite" and self.k == 1

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "rationals" else self.p

    @property
    def order(self) -> int | None:
        return None if self.kind == "rationals" else self.p**self.k

    def raw_zero(self):
        if self.kind == "rationals":
            return Fraction(0)
        if self.k == 1:
            return 0
        return (0,) * self.k

    def raw_one(self):
        return self.raw_from_int(1)

    def raw_from_int(self, n: int):
        if self.kind == "rationals":
            return Fraction(n)
        if self.k == 1:
            return n % self.p
        return (n % self.p,) + (0,) * (self.k - 1)

    def raw_is_zero(self, a) -> bool:
        if self.k > 1:
            return not any(a)
        return a == 0

    def raw_add(self, a, b):
        if self.kind == "rationals":
            return a + b
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def raw_sub(self, a, b):
        if self.kind == "rationals":
            return a - b
        if self.k == 1:
            return (a - b) % self.p
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def raw_neg(self, a):
        if self.kind == "rationals":
            return -a
        if self.k == 1:
            return -a % self.p
        return tuple(-x % self.p for x in a)

    def raw_mul(self, a, b):
        if self.kind == "rationals":
            return a * b
        if self.k == 1:
            return a * b % self.p
        p, k, mod = self.p, self.k, self.modulus
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(k):
                    prod[i - k + j] -= c * mod[j]
        return tuple(c % p for c in prod[:k])

    def raw_pow(self, a, e: int):
        if e < 0:
            return self.raw_pow(self.raw_inv(a), -e)
        if self.kind == "rationals":
            return a**e
        if self.k == 1:
            return pow(a, e, self.p)
        result = self.raw_one()
        base = a
        while e:
            if e & 1:
                result = self.raw_mul(result, base)
            base = self.raw_mul(base, base)
            e >>= 1
        return result

    def raw_inv(self, a):
        if self.raw_is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "rationals":
            return 1 / a
        if self.k == 1:
            return pow(a, -1, self.p)
        return self.raw_pow(a, self.order - 2)

    def raw_frobenius(self, a):
        return self.raw_pow(a, self.p)

    def raw_key(self, a):
        """Total order used for canonical sorting of points."""
        if self.kind == "rationals":
            return (a,)
        if self.k == 1:
            return (a,)
        return a

    # text ------------------------------------------------------------------
    def format_raw(self, a) -> str:
        if self.kind == "rationals":
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        if self.k == 1:
            return str(a)
        return ":".join(str(c) for c in a)

    def parse_raw(self, text: str):
        s = text.strip()
        try:
            if self.kind == "rationals":
                return Fraction(s)
            if ":" in s:
                parts = [int(c) for c in s.split(":")]
                if len(parts) != self.k:
                    raise InvalidInput(f"element {s!r} needs {self.k} components")
                if any(not 0 <= c < self.p for c in parts):
                    raise InvalidInput(f"element {s!r} has components outside 0..{self.p - 1}")
                return parts[0] if self.k == 1 else tuple(parts)
            if "/" in s:
                raise InvalidInput(f"{s!r} is not an element of {self}")
            return self.raw_from_int(int(s))
        except ValueError as exc:
            if isinstance(exc, InvalidInput):
                raise
            raise InvalidInput(f"cannot parse field element {s!r}") from exc

    # element constructors -------------------------------------------------
    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.ctx != self:
                raise FieldMismatch(f"element of {value.ctx} used in {self}")
            return value
        if isinstance(value, int):
            return FieldElem(self, self.raw_from_int(value))
        if isinstance(value, Fraction) and self.kind == "rationals":
            return FieldElem(self, value)
        if isinstance(value, str):
            return FieldElem(self, self.parse_raw(value))
        if isinstance(value, (tuple, list)) and self.k > 1 and len(value) == self.k:
            return FieldElem(self, tuple(int(c) % self.p for c in value))
        raise InvalidInput(f"cannot coerce {value!r} into {self}")

    def zero(self) -> "FieldElem":
        return FieldElem(self, self.raw_zero())

    def one(self) -> "FieldElem":
        return FieldElem(self, self.raw_one())

    def elements(self) -> list["FieldElem"]:
        """All elements of a finite field, in canonical (sorted) order."""
        if not self.is_finite:
            raise InvalidInput("the rationals cannot be enumerated")
        if self.k == 1:
            return [FieldElem(self, a) for a in range(self.p)]
        return [FieldElem(self, tuple(c)) for c in itertools.product(range(self.p), repeat=self.k)]

    def spec_string(self) -> str:
        """Inverse of :func:`parse_field_spec`."""
        if self.kind == "rationals":
            return "Q"
        if self.k == 1:
            return str(self.p)
        return f"{self.p},{self.k},{':'.join(map(str, self.modulus))}"

    def __str__(self) -> str:
        if self.kind == "rationals":
            return "QQ"
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"


def field_make(kind: str = "finite", p: int | None = None, k: int = 1,
               modulus: Sequence[int] | None = None) -> FieldCtx:
    """Build a coefficient context.

    For ``k > 1`` with no modulus, the smallest monic irreducible (ordered by
    its integer code ``sum c_i p^i``) is chosen, so the choice is reproducible.
    """
    if kind in ("rationals", "Q", "QQ"):
        return FieldCtx("rationals")
    if kind != "finite":
        raise InvalidInput(f"unknown field kind {kind!r}")
    if p is None or not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if not 1 <= k <= MAX_EXTENSION_DEGREE:
        raise InvalidInput(f"extension degree {k} outside 1..{MAX_EXTENSION_DEGREE}")
    if k == 1:
        if modulus is not None and len(modulus) not in (0, 2):
            raise InvalidInput("prime fields take no modulus")
        return FieldCtx("finite", p, 1, None)
    if modulus is None:
        mod = smallest_irreducible(p, k)
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) == k:
            mod = mod + (1,)
        if len(mod) != k + 1 or mod[-1] != 1:
            raise InvalidInput(f"modulus must be monic of degree {k}")
        if not is_irreducible(mod, p):
            raise InvalidInput(f"modulus {mod} is reducible over GF({p})")
    return FieldCtx("finite", p, k, mod)


def parse_field_spec(text: str) -> FieldCtx:
    """Parse ``p[,k[,modulus]]`` or ``Q``; modulus is colon-packed, low-to-high."""
    s = text.strip()
    if s.upper() in ("Q", "QQ"):
        return field_make("rationals")
    parts = [x.strip() for x in s.split(",")]
    try:
        p = int(parts[0])
        k = int(parts[1]) if len(parts) > 1 else 1
        modulus = [int(c) for c in parts[2].split(":")] if len(parts) > 2 else None
    except ValueError as exc:
        raise InvalidInput(f"bad field spec {text!r}") from exc
    return field_make("finite", p, k, modulus)


def extend(ctx: FieldCtx, k: int) -> FieldCtx:
    """Degree-k extension of a prime field (k=1 returns ctx)."""
    if not ctx.is_prime_field:
        raise InvalidInput("only prime fields can be extended")
    return field_make("finite", ctx.p, k)


def embed(elem: "FieldElem", target: FieldCtx) -> "FieldElem":
    """Map an element of F_p into F_{p^k} (or identity)."""
    src = elem.ctx
    if src == target:
        return elem
    if not (src.is_prime_field and target.is_finite and target.p == src.p):
        raise FieldMismatch(f"cannot embed {src} into {target}")
    return FieldElem(target, target.raw_from_int(elem.v))


class FieldElem:
    __slots__ = ("ctx", "v")

    def __init__(self, ctx: FieldCtx, v):
        self.ctx = ctx
        self.v = v

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise FieldMismatch(f"mixed fields {self.ctx} and {other.ctx}")
            return other.v
        if isinstance(other, int):
            return self.ctx.raw_from_int(other)
        if isinstance(other, Fraction) and self.ctx.kind == "rationals":
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.raw_add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.raw_sub(self.v, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.raw_sub(o, self.v))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.raw_mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.raw_mul(self.v, self.ctx.raw_inv(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, self.ctx.raw_mul(o, self.ctx.raw_inv(self.v)))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.raw_neg(self.v))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.raw_pow(self.v, e))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.raw_inv(self.v))

    def frobenius(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.raw_frobenius(self.v))

    def is_zero(self) -> bool:
        return self.ctx.raw_is_zero(self.v)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx == other.ctx and self.v == other.v
        if isinstance(other, int):
            return self.v == self.ctx.raw_from_int(other)
        if isinstance(other, Fraction) and self.ctx.kind == "rationals":
            return self.v == other
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.v))

    def sort_key(self):
        return self.ctx.raw_key(self.v)

    def __str__(self):
        return self.ctx.format_raw(self.v)

    def __repr__(self):
        return f"FieldElem({self.ctx}, {self})"


# -- matrices -----------------------------------------------------------------

@dataclass(frozen=True)
class ExactMatrix:
    ctx: FieldCtx
    rows: int
    cols: int
    entries: tuple[tuple[FieldElem, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise InvalidInput("matrix dimensions do not match entry grid")

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows: Iterable[Iterable], cols: int | None = None) -> "ExactMatrix":
        grid = tuple(tuple(x if isinstance(x, FieldElem) else ctx(x) for x in r) for r in rows)
        ncols = cols if cols is not None else (len(grid[0]) if grid else 0)
        return cls(ctx, len(grid), ncols, grid)

    def transpose(self) -> "ExactMatrix":
        t = tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols))
        return ExactMatrix(self.ctx, self.cols, self.rows, t)

    def raw_rows(self) -> list[list]:
        for row in self.entries:
            for x in row:
                if x.ctx != self.ctx:
                    raise FieldMismatch(f"entry over {x.ctx} in a matrix over {self.ctx}")
        return [[x.v for x in row] for row in self.entries]


def _rank_prime(rows: list[list[int]], p: int) -> int:
    rows = [r[:] for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        inv = pow(pr[c], -1, p)
        pr = [x * inv % p for x in pr]
        rows[rank] = pr
        for i in range(rank + 1, len(rows)):
            f = rows[i][c]
            if f:
                ri = rows[i]
                rows[i] = [(a - f * b) % p for a, b in zip(ri, pr)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _content_reduce(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    return [x // g for x in row] if g > 1 else row


def _rank_rational(rows: list[list[Fraction]]) -> int:
    # clear denominators, then fraction-free elimination with content reduction
    irows = []
    for r in rows:
        den = 1
        for x in r:
            den = den * x.denominator // gcd(den, x.denominator)
        ir = [int(x * den) for x in r]
        if any(ir):
            irows.append(_content_reduce(ir))
    if not irows:
        return 0
    ncols = len(irows[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(irows)) if irows[i][c]), None)
        if piv is None:
            continue
        irows[rank], irows[piv] = irows[piv], irows[rank]
        pr = irows[rank]
        a = pr[c]
        for i in range(rank + 1, len(irows)):
            b = irows[i][c]
            if b:
                irows[i] = _content_reduce([a * x - b * y for x, y in zip(irows[i], pr)])
        rank += 1
        if rank == len(irows):
            break
    return rank


def _rref_generic(ctx: FieldCtx, rows: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form on raw values; returns (rows, pivot columns)."""
    rows = [r[:] for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if not ctx.raw_is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = ctx.raw_inv(rows[rank][c])
        rows[rank] = [ctx.raw_mul(x, inv) for x in rows[rank]]
        pr = rows[rank]
        for i in range(len(rows)):
            if i != rank and not ctx.raw_is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [ctx.raw_sub(x, ctx.raw_mul(f, y)) for x, y in zip(rows[i], pr)]
        pivots.append(c)
        rank += 1
        if rank == len(rows):
            break
    return rows, pivots


def mat_rank(m: ExactMatrix) -> int:
    """Rank of an exact matrix over its field. No floating point is involved."""
    rows = m.raw_rows()
    if m.rows == 0 or m.cols == 0:
        return 0
    ctx = m.ctx
    if ctx.kind == "rationals":
        return _rank_rational(rows)
    if ctx.k == 1:
        return _rank_prime(rows, ctx.p)
    return len(_rref_generic(ctx, rows)[1])


def mat_nullspace(m: ExactMatrix) -> list[tuple[FieldElem, ...]]:
    """Basis of the right kernel {v : m v = 0}."""
    ctx = m.ctx
    if m.cols == 0:
        return []
    rows = m.raw_rows()
    if not rows:
        return [tuple(ctx.one() if i == j else ctx.zero() for i in range(m.cols)) for j in range(m.cols)]
    rref, pivots = _rref_generic(ctx, rows)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ctx.raw_zero()] * m.cols
        v[f] = ctx.raw_one()
        for r, pc in enumerate(pivots):
            v[pc] = ctx.raw_neg(rref[r][f])
        basis.append(tuple(FieldElem(ctx, x) for x in v))
    return basis


def nullity(m: ExactMatrix) -> int:
    return m.cols - mat_rank(m)
