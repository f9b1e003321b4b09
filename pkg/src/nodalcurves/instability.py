"""Interval arithmetic for the Bogomolov-instability argument.

Suppose a nodal curve C = lambda*A (A the polarisation, A^2 = q) has delta
nodes failing to impose independent conditions.  A rank-2 bundle E with
c1 = (lambda-1)A and c2 = delta0 <= delta then exists; if
c1^2 - 4 c2 > 0 it is unstable and a destabilising divisor M exists.  Writing
x = M.A, the numerical consequences are

* C3  x > (lambda-1)q/2                      (destabilising)
* C5  x < (lambda-1)q                        (a residual divisor contains N0)
* Q1  x^2/q - (3lambda-2)/2 x + lambda(lambda-1)q/2 >= 0
* Q2  x^2/q - (lambda-1) x + lambda(lambda-2)q/4 > 0   (only when
      delta < lambda(lambda-2)q/4; non-strict at equality)

and an empty feasible set is the contradiction proving the nodes do impose
independent conditions.  When NS(S) = Z.A and lambda is an odd integer, x is
forced into qZ.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .errors import InvalidInput
from .intersection import as_fraction, frac_str

INF = None


@dataclass(frozen=True)
class Interval:
    lo: Fraction | None  # None = -infinity
    hi: Fraction | None  # None = +infinity
    lo_closed: bool = False
    hi_closed: bool = False

    def is_empty(self) -> bool:
        if self.lo is None or self.hi is None:
            return False
        if self.lo < self.hi:
            return False
        return not (self.lo == self.hi and self.lo_closed and self.hi_closed)

    def contains(self, x: Fraction) -> bool:
        if self.lo is not None and (x < self.lo or (x == self.lo and not self.lo_closed)):
            return False
        if self.hi is not None and (x > self.hi or (x == self.hi and not self.hi_closed)):
            return False
        return True

    def intersect(self, other: "Interval") -> "Interval":
        lo, loc = self.lo, self.lo_closed
        if other.lo is not None and (lo is None or other.lo > lo or (other.lo == lo and not other.lo_closed)):
            lo, loc = other.lo, other.lo_closed
        hi, hic = self.hi, self.hi_closed
        if other.hi is not None and (hi is None or other.hi < hi or (other.hi == hi and not other.hi_closed)):
            hi, hic = other.hi, other.hi_closed
        return Interval(lo, hi, loc, hic)

    def __str__(self):
        if self.lo is not None and self.lo == self.hi:
            return "{" + frac_str(self.lo) + "}"
        left = "(-inf" if self.lo is None else ("[" if self.lo_closed else "(") + frac_str(self.lo)
        right = "+inf)" if self.hi is None else frac_str(self.hi) + ("]" if self.hi_closed else ")")
        return f"{left}, {right}"


def intersect_unions(a: list[Interval], b: list[Interval]) -> list[Interval]:
    out = [x.intersect(y) for x in a for y in b]
    return sorted((iv for iv in out if not iv.is_empty()),
                  key=lambda iv: (iv.lo is not None, iv.lo if iv.lo is not None else 0))


def quantize(ivs: list[Interval], step: Fraction) -> list[Interval]:
    """Intersect a bounded union of intervals with step*Z (points as {x})."""
    pts = []
    for iv in ivs:
        if iv.lo is None or iv.hi is None:
            raise ValueError("cannot quantize an unbounded interval")
        k = -((-iv.lo) // step) if step > 0 else 0  # ceil(lo/step)
        while k * step <= iv.hi:
            x = k * step
            if iv.contains(x):
                pts.append(Interval(x, x, True, True))
            k += 1
    return pts


def _exact_sqrt(x: Fraction) -> Fraction:
    if x < 0:
        raise ValueError("negative discriminant")
    n, d = isqrt(x.numerator), isqrt(x.denominator)
    if n * n != x.numerator or d * d != x.denominator:
        raise ValueError(f"{x} is not a rational square")
    return Fraction(n, d)


def quadratic_roots(a: Fraction, b: Fraction, c: Fraction) -> tuple[Fraction, Fraction]:
    """Both roots of a x^2 + b x + c (a > 0) when they are rational."""
    s = _exact_sqrt(b * b - 4 * a * c)
    return ((-b - s) / (2 * a), (-b + s) / (2 * a))


@dataclass
class Constraint:
    label: str
    relation: str
    thresholds: tuple[Fraction, ...]
    region: list[Interval]
    quadratic: tuple[Fraction, Fraction, Fraction] | None = None

    def to_dict(self) -> dict:
        d = {"label": self.label, "relation": self.relation,
             "threshold": [frac_str(t) for t in self.thresholds],
             "region": [str(iv) for iv in self.region]}
        if self.quadratic is not None:
            d["quadratic"] = [frac_str(c) for c in self.quadratic]
        return d


@dataclass
class InstabilityReport:
    lam: Fraction
    q: int
    delta: int
    ns_cyclic: bool
    quantized: bool
    discriminant: Fraction
    unstable: bool
    constraints: list[Constraint] = field(default_factory=list)
    feasible_set: list[Interval] = field(default_factory=list)
    contradiction: bool = False
    equality_case: dict | None = None
    note: str = ""

    @property
    def delta0_range(self) -> tuple[int, int]:
        return (1, self.delta)

    def to_dict(self) -> dict:
        return {
            "lambda": frac_str(self.lam), "q": self.q, "delta": self.delta,
            "delta0_range": list(self.delta0_range), "ns_cyclic": self.ns_cyclic,
            "quantized": self.quantized, "discriminant": frac_str(self.discriminant),
            "unstable": self.unstable,
            "constraints": [c.to_dict() for c in self.constraints],
            "feasible_set": [str(iv) for iv in self.feasible_set],
            "contradiction": self.contradiction,
            "equality_case": self.equality_case, "note": self.note,
        }


def is_odd_integer(x: Fraction) -> bool:
    return x.denominator == 1 and x.numerator % 2 == 1


def twisted_c2(lam: Fraction, q: int, delta0: int, x: Fraction) -> Fraction:
    """c2(E(-M)) = delta0 + M^2 - (lambda-1) x, taking M^2 = x^2/q (Hodge equality)."""
    return delta0 + x * x / q - (lam - 1) * x


def instability_analyze(lam, q: int, delta: int, ns_cyclic: bool = False,
                        lambda_is_odd_integer: bool | None = None) -> InstabilityReport:
    lam = as_fraction(lam)
    if lam < 2:
        raise InvalidInput(f"lambda must be >= 2 (got {frac_str(lam)})")
    if q < 1 or delta < 1:
        raise InvalidInput("need q >= 1 and delta >= 1")
    odd = is_odd_integer(lam) if lambda_is_odd_integer is None else lambda_is_odd_integer
    if odd and not is_odd_integer(lam):
        raise InvalidInput("lambda_is_odd_integer set but lambda is not an odd integer")
    qf = Fraction(q)
    disc = (lam - 1) ** 2 * qf - 4 * delta
    quantized = ns_cyclic and odd
    rep = InstabilityReport(lam, q, delta, ns_cyclic, quantized, disc, disc > 0)
    if not rep.unstable:
        rep.note = "stable: c1^2 - 4c2 <= 0, analyzer silent"
        return rep

    c3 = (lam - 1) * qf / 2
    c5 = (lam - 1) * qf
    rep.constraints.append(Constraint("C3", ">", (c3,), [Interval(c3, INF)]))
    rep.constraints.append(Constraint("C5", "<", (c5,), [Interval(INF, c5)]))

    q1 = (1 / qf, -(3 * lam - 2) / 2, lam * (lam - 1) * qf / 2)
    r1, r2 = quadratic_roots(*q1)
    rep.constraints.append(Constraint("Q1", "<= r1 or >= r2", (r1, r2),
                                      [Interval(INF, r1, hi_closed=True), Interval(r2, INF, lo_closed=True)], q1))

    threshold = lam * (lam - 2) * qf / 4
    if delta <= threshold:
        q2 = (1 / qf, -(lam - 1), threshold)
        s1, s2 = quadratic_roots(*q2)
        weak = delta == threshold
        if weak:
            region = [Interval(INF, s1, hi_closed=True), Interval(s2, INF, lo_closed=True)]
            rel = "<= r1 or >= r2"
        else:
            region = [Interval(INF, s1), Interval(s2, INF)]
            rel = "< r1 or > r2"
        rep.constraints.append(Constraint("Q2" if not weak else "Q2(weak)", rel, (s1, s2), region, q2))

    feasible = [Interval(INF, INF)]
    for c in rep.constraints:
        feasible = intersect_unions(feasible, c.region)
    if quantized:
        feasible = quantize(feasible, qf)
    rep.feasible_set = feasible
    rep.contradiction = not feasible

    if delta == threshold:
        x = lam * qf / 2
        if any(iv.contains(x) for iv in feasible):
            c2 = twisted_c2(lam, q, delta, x)
            assert c2 == 0
            rep.equality_case = {"x": frac_str(x), "c2_twisted": frac_str(c2),
                                 "delta0": delta, "ci_prediction": True,
                                 "ci_type": "M, C-M with M.A = lambda*q/2"}
    if rep.contradiction:
        rep.note = "feasible set empty: nodes impose independent conditions"
    elif rep.equality_case:
        rep.note = "equality case: only x = lambda*q/2 survives; N0 = N is a complete intersection"
    else:
        rep.note = "feasible set nonempty: no contradiction reached"
    return rep
