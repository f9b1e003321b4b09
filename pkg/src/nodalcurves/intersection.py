"""Intersection numbers, genus and dimension counts, and node-count bounds
for smooth surfaces S of degree d in P^3 (K_S = (d-4)H, NS(S) = Z.H when
assumed cyclic).

Everything is exact: bounds are :class:`fractions.Fraction`, comparisons are
exact, and no float ever enters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb, floor

from .errors import HypothesisViolation, InvalidInput


def frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise InvalidInput("floats are not accepted; pass an int, Fraction or 'a/b' string")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"not a rational number: {x!r}") from exc


@dataclass(frozen=True)
class SurfaceCtx:
    d: int
    ns_cyclic: bool = False

    def __post_init__(self):
        if self.d < 1:
            raise InvalidInput("surface degree must be >= 1")

    @property
    def h_sq(self) -> int:
        return self.d

    @property
    def k_coeff(self) -> int:
        return self.d - 4

    @property
    def k_sq(self) -> int:
        return self.k_coeff**2 * self.d

    def intersect(self, a, b) -> Fraction:
        """(aH).(bH) for rational multiples of the plane class."""
        return Fraction(a) * Fraction(b) * self.d


def pa_of_multiple(surf: SurfaceCtx, n: int) -> int:
    """Arithmetic genus of nH: D(D+K)/2 + 1 with D = nH, K = (d-4)H."""
    if n < 1:
        raise InvalidInput("n must be >= 1")
    twice = surf.intersect(n, n + surf.k_coeff)
    assert twice.denominator == 1 and twice.numerator % 2 == 0
    return twice.numerator // 2 + 1


def binom3(s: int) -> int:
    return comb(s, 3) if s >= 3 else 0


def h0_of_multiple(d: int, m: int) -> int:
    """h^0(O_S(m)) for a degree-d surface in P^3."""
    if d < 1 or m < 0:
        raise InvalidInput("need d >= 1 and m >= 0")
    return binom3(m + 3) - binom3(m - d + 3)


def plane_genus(d: int) -> int:
    return (d - 1) * (d - 2) // 2


@dataclass
class Hypothesis:
    text: str
    status: str  # "checked" | "assumed" | "unverified"

    def to_dict(self):
        return {"text": self.text, "status": self.status}


@dataclass
class BoundReport:
    kind: str
    params: dict
    bound_value: Fraction
    strict: bool
    hypotheses: list[Hypothesis] = field(default_factory=list)
    verdict: str = ""
    delta: int | None = None
    dim_linear_system: int | None = None
    expected_dim: int | None = None

    @property
    def max_admissible_delta(self) -> int:
        if self.strict:
            return ceil(self.bound_value) - 1
        return floor(self.bound_value)

    def admits(self, delta: int) -> bool:
        return delta < self.bound_value if self.strict else delta <= self.bound_value

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": {k: frac_str(v) if isinstance(v, Fraction) else v for k, v in self.params.items()},
            "bound_value": frac_str(self.bound_value),
            "strict": self.strict,
            "max_admissible_delta": self.max_admissible_delta,
            "hypotheses": [h.to_dict() for h in self.hypotheses],
            "delta": self.delta,
            "dim_linear_system": self.dim_linear_system,
            "expected_dim": self.expected_dim,
            "verdict": self.verdict,
        }


def _require(cond: bool, what: str):
    if not cond:
        raise HypothesisViolation(f"hypothesis fails: {what}")


def _finish(rep: BoundReport, conclusion: str) -> BoundReport:
    rel = "<" if rep.strict else "<="
    if rep.delta is None:
        rep.verdict = f"delta {rel} {frac_str(rep.bound_value)} guarantees: {conclusion}"
    elif rep.admits(rep.delta):
        rep.verdict = f"delta={rep.delta} {rel} {frac_str(rep.bound_value)}: {conclusion}"
    else:
        rep.verdict = (f"delta={rep.delta} not {rel} {frac_str(rep.bound_value)}: "
                       f"outside the guaranteed range, no conclusion")
    if rep.delta is not None and rep.dim_linear_system is not None:
        rep.expected_dim = rep.dim_linear_system - rep.delta
    return rep


def severi_bound(kind: str, delta: int | None = None, **params) -> BoundReport:
    """Node-count threshold below which the Severi variety is smooth of
    codimension delta.

    kinds and their parameters:

    * ``plane`` (d): delta <= (d-1)(d-2)/2, dimension d(d+3)/2 - delta
    * ``k3`` (pa): delta <= p_a
    * ``pluricanonical`` (p, K2, ns_cyclic): delta < p(p-2)K^2/4, or
      (p-1)^2 K^2/4 when NS is cyclic and p is an odd integer
    * ``surface_p3`` (d, n): delta < nd(n-2d+8)/4 for C in |nH|
    * ``quintic_odd`` (p): delta < 5(p-1)^2/4, Picard group Z
    """
    if delta is not None and delta < 0:
        raise InvalidInput("delta must be >= 0")
    H = Hypothesis
    if kind == "plane":
        d = int(params["d"])
        _require(d >= 3, f"d >= 3 (got d={d})")
        rep = BoundReport(kind, {"d": d}, Fraction(plane_genus(d)), False,
                          [H(f"S = P^2, d = {d} >= 3", "checked")], delta=delta,
                          dim_linear_system=d * (d + 3) // 2)
        return _finish(rep, "Severi variety non empty and smooth of dimension d(d+3)/2 - delta")
    if kind == "k3":
        pa = int(params["pa"])
        _require(pa >= 2, f"p_a(D) >= 2 (got {pa})")
        rep = BoundReport(kind, {"pa": pa}, Fraction(pa), False,
                          [H(f"p_a(D) = {pa} >= 2", "checked"),
                           H("S is a K3 surface and D smooth irreducible", "assumed")],
                          delta=delta, dim_linear_system=pa)
        return _finish(rep, "smooth and of codimension delta in |D|")
    if kind == "pluricanonical":
        p = as_fraction(params["p"])
        k2 = int(params["K2"])
        ns = bool(params.get("ns_cyclic", False))
        _require(p >= 2, f"p >= 2 (got {frac_str(p)})")
        _require(k2 >= 1, f"K_S^2 >= 1 (got {k2})")
        odd = p.denominator == 1 and p.numerator % 2 == 1
        hyps = [H(f"p = {frac_str(p)} >= 2", "checked"), H(f"K_S^2 = {k2} >= 1", "checked"),
                H("|K_S| ample", "assumed"), H("C irreducible, C num. equiv. p K_S", "assumed"),
                H("|C| has smooth general member", "unverified")]
        if ns and odd:
            bound = (p - 1) ** 2 * k2 / 4
            hyps.append(H("NS(S) = Z generated by K_S, p odd integer", "assumed"))
        else:
            bound = p * (p - 2) * k2 / 4
        rep = BoundReport(kind, {"p": p, "K2": k2, "ns_cyclic": ns}, bound, True, hyps, delta=delta)
        return _finish(rep, "nodes impose independent conditions; Severi variety smooth of codimension delta")
    if kind == "surface_p3":
        d, n = int(params["d"]), int(params["n"])
        _require(d >= 5, f"d >= 5 (got d={d})")
        _require(n >= 2 * d - 8, f"n >= 2d - 8 (got n={n}, d={d})")
        bound = Fraction(n * d * (n - 2 * d + 8), 4)
        rep = BoundReport(kind, {"d": d, "n": n}, bound, True,
                          [H(f"smooth S of degree d = {d} >= 5 in P^3", "assumed"),
                           H(f"n = {n} >= 2d - 8 = {2 * d - 8}", "checked"),
                           H("C in |nH| irreducible with only nodes", "assumed")],
                          delta=delta, dim_linear_system=h0_of_multiple(d, n) - 1)
        return _finish(rep, "smooth point of the Severi variety with expected codimension delta")
    if kind == "quintic_odd":
        p = int(params["p"])
        _require(p >= 3 and p % 2 == 1, f"p >= 3 odd (got {p})")
        bound = Fraction(5 * (p - 1) ** 2, 4)
        rep = BoundReport(kind, {"p": p}, bound, True,
                          [H(f"p = {p} >= 3 odd", "checked"),
                           H("smooth quintic S with Picard group Z", "assumed")],
                          delta=delta, dim_linear_system=h0_of_multiple(5, p) - 1)
        return _finish(rep, "Severi variety smooth with expected codimension delta")
    raise InvalidInput(f"unknown bound kind {kind!r}")


def gln_bound(d: int, n: int, variant: str = "main", delta: int | None = None) -> BoundReport:
    """Node-count threshold below which a complete intersection of type (d, n)
    is geometrically linearly normal."""
    H = Hypothesis
    if variant == "main":
        _require(d >= 5, f"d >= 5 (got {d})")
        _require(n >= 2, f"n >= 2 (got {n})")
        rep = BoundReport("gln", {"d": d, "n": n}, Fraction(n * d * (n - 2), 4), True,
                          [H(f"d = {d} >= 5, n = {n} >= 2", "checked"),
                           H("C irreducible with only nodes", "assumed")], delta=delta)
    elif variant == "quintic_odd":
        _require(d == 5, f"d = 5 (got {d})")
        _require(n % 2 == 1 and n >= 3, f"n odd >= 3 (got {n})")
        rep = BoundReport("gln_quintic_odd", {"d": d, "n": n}, Fraction(5 * (n - 1) ** 2, 4), True,
                          [H(f"d = 5, n = {n} odd", "checked"),
                           H("Picard group of S is Z", "assumed")], delta=delta)
    elif variant == "swapped":
        _require(5 <= n < d, f"5 <= n < d (got n={n}, d={d})")
        rep = BoundReport("gln_swapped", {"d": d, "n": n}, Fraction(n * d * (d - 2), 4), True,
                          [H(f"5 <= n = {n} < d = {d}", "checked"),
                           H("C also lies on a smooth surface of degree n", "assumed")], delta=delta)
    else:
        raise InvalidInput(f"unknown gln variant {variant!r}")
    return _finish(rep, "C is geometrically linearly normal")


@dataclass
class ObstructionDims:
    m: int
    parity: str
    n: int
    delta: int
    h0_nH: int
    h0_normal_fixed_cone: int
    family_upper: int
    severi_lower: int
    general_escapes: bool
    detail: dict

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def obstruction_locus_dims(m: int, parity: str) -> ObstructionDims:
    """Dimension counts comparing the locus of projected curves with the
    Severi variety, for the even (n = 2m) and odd (n = 2m+1) quintic examples."""
    if m < 3:
        raise HypothesisViolation(f"m >= 3 required (got {m})")
    if parity == "even":
        n, delta = 2 * m, 5 * (m * m - m)
        h0_c2 = 14  # h^0(O_C~(2)) on the degree-5n curve in P^4
        h0_cm = 5 * m * m - 10 * m + 14
        h0N = h0_c2 + h0_cm
        assert h0N == 5 * m * m - 10 * m + 28
        family = h0N + 4  # moving the cone vertex in P^4
        detail = {"h0_O(2)": h0_c2, "h0_O(m)": h0_cm}
    elif parity == "odd":
        n, delta = 2 * m + 1, 5 * m * m
        pa_tilde = 5 * m * m + 15 * m + 6
        h1_bound = 9
        h0N = 14 + (m + 1) * 5 * (2 * m + 1) + 1 - pa_tilde + h1_bound
        assert h0N == 5 * m * m + 23
        family = h0N + 4
        detail = {"p_a_tilde": pa_tilde, "h1_O(m+1)_upper": h1_bound}
    else:
        raise InvalidInput(f"parity must be 'even' or 'odd' (got {parity!r})")
    h0 = h0_of_multiple(5, n)
    severi_lower = h0 - 1 - delta
    closed = 5 * m * m + 4 if parity == "even" else 5 * m * m + 5 * m + 4
    assert severi_lower == closed, (severi_lower, closed)
    return ObstructionDims(m, parity, n, delta, h0, h0N, family, severi_lower,
                           severi_lower > family, detail)
