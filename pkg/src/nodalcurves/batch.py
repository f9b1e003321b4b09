"""Vectorised finite-field arithmetic for brute-force point enumeration.

Prime-field values are int64 arrays of shape (N,); extension-field values are
int64 arrays of shape (k, N) holding coefficients on 1, t, ..., t^{k-1}.
Only used for searching; every point found is re-verified with the scalar
arithmetic of :mod:`nodalcurves.fieldcore`.
"""

from __future__ import annotations

import numpy as np

from .fieldcore import FieldCtx, FieldElem
from .polyring import HomPoly


class BatchField:
    def __init__(self, ctx: FieldCtx):
        if not ctx.is_finite:
            raise ValueError("batch arithmetic needs a finite field")
        self.ctx = ctx
        self.p = ctx.p
        self.k = ctx.k
        self.q = ctx.order
        self.modulus = np.array(ctx.modulus, dtype=np.int64) if ctx.k > 1 else None

    def decode(self, idx: np.ndarray) -> np.ndarray:
        """Element index (sum c_i p^i) -> value array."""
        if self.k == 1:
            return idx.astype(np.int64)
        out = np.empty((self.k, idx.size), dtype=np.int64)
        rest = idx.astype(np.int64)
        for i in range(self.k):
            out[i] = rest % self.p
            rest = rest // self.p
        return out

    def const(self, raw, n: int) -> np.ndarray:
        if self.k == 1:
            return np.full(n, raw, dtype=np.int64)
        return np.repeat(np.array(raw, dtype=np.int64)[:, None], n, axis=1)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        p = self.p
        if self.k == 1:
            return a * b % p
        k = self.k
        prod = [None] * (2 * k - 1)
        for i in range(k):
            for j in range(k):
                t = a[i] * b[j]
                prod[i + j] = t if prod[i + j] is None else prod[i + j] + t
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i] % p
            for j in range(k):
                if self.modulus[j]:
                    prod[i - k + j] = prod[i - k + j] - c * int(self.modulus[j])
        return np.stack(prod[:k]) % p

    def _scalar_matrix(self, raw) -> np.ndarray:
        # column j holds raw * t^j reduced, so raw * a = M @ a
        cols = []
        basis = [tuple(1 if i == j else 0 for i in range(self.k)) for j in range(self.k)]
        for e in basis:
            cols.append(self.ctx.raw_mul(raw, e))
        return np.array(cols, dtype=np.int64).T

    def scal(self, raw, a):
        if self.k == 1:
            return a * raw % self.p
        return (self._scalar_matrix(raw) @ a) % self.p

    def is_zero(self, a) -> np.ndarray:
        if self.k == 1:
            return a == 0
        return ~np.any(a, axis=0)

    def take(self, a, mask):
        return a[mask] if self.k == 1 else a[:, mask]

    def size(self, a) -> int:
        return a.shape[0] if self.k == 1 else a.shape[1]

    def to_elems(self, a) -> list[FieldElem]:
        if self.k == 1:
            return [FieldElem(self.ctx, int(x)) for x in a]
        return [FieldElem(self.ctx, tuple(int(c) for c in col)) for col in a.T]

    def evaluate(self, f: HomPoly, coords: list[np.ndarray], cache: dict | None = None) -> np.ndarray:
        """Evaluate f at N points given as per-variable value arrays."""
        n = self.size(coords[0])
        cache = {} if cache is None else cache
        total = self.const(self.ctx.raw_zero(), n)

        def power(i, e):
            key = (i, e)
            if key not in cache:
                if e == 0:
                    cache[key] = self.const(self.ctx.raw_one(), n)
                elif e == 1:
                    cache[key] = coords[i]
                else:
                    cache[key] = self.mul(power(i, e - 1), coords[i])
            return cache[key]

        for mono, c in f.raw_terms().items():
            term = None
            for i, e in enumerate(mono):
                if e:
                    pw = power(i, e)
                    term = pw if term is None else self.mul(term, pw)
            if term is None:
                term = self.const(c, n)
            else:
                term = self.scal(c, term)
            total = self.add(total, term)
        return total


def projective_blocks(bf: BatchField, nvars: int = 4, chunk: int = 1 << 20):
    """Yield coordinate arrays covering P^{nvars-1}(F_q), normalised so the
    first nonzero coordinate is 1."""
    q = bf.q
    for lead in range(nvars):
        free = nvars - 1 - lead
        total = q**free
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
            n = idx.size
            coords = []
            for i in range(nvars):
                if i < lead:
                    coords.append(bf.const(bf.ctx.raw_zero(), n))
                elif i == lead:
                    coords.append(bf.const(bf.ctx.raw_one(), n))
                else:
                    power = q ** (nvars - 1 - i)
                    coords.append(bf.decode((idx // power) % q))
            yield coords
