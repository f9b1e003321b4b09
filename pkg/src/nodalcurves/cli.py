"""Command-line frontend.

Every subcommand prints one JSON envelope to stdout
``{tool_version, command, inputs_echo, result, flags, warnings}`` and a short
human summary to stderr.  Exit codes: 0 success, 2 invalid input,
3 degenerate geometry, 4 inconclusive search.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .constructor import (DEFAULT_RETRIES, ExampleRecord, assess_nodes, build_example,
                          oracle_witness, sweep, verify_example)
from .errors import InvalidInput, NodalError
from .fieldcore import FieldCtx, extend, parse_field_spec
from .instability import instability_analyze
from .intersection import frac_str, gln_bound, obstruction_locus_dims, severi_bound
from .nodalcurve import (IRREDUCIBILITY_FLAG, CurveRecord, gln_check, make_curve_record, node_classify,
                         plane_severi_check, severi_report, singular_points)
from .polyring import poly_parse
from .zerodim import (conditions_imposed, format_point, koszul_ci_h0, random_grid_ci, read_points,
                      socle_report, write_points)

EXIT_OK, EXIT_INVALID, EXIT_DEGENERATE, EXIT_INCONCLUSIVE = 0, 2, 3, 4


class ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ArgError(message)


class Outcome:
    """What a subcommand hands back to the driver."""

    def __init__(self, result, summary: str, exit_code: int = EXIT_OK,
                 flags: list[str] | None = None, warnings: list[str] | None = None):
        self.result = result
        self.summary = summary
        self.exit_code = exit_code
        self.flags = flags or []
        self.warnings = warnings or []


def _field(args) -> FieldCtx:
    return parse_field_spec(args.field)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from exc


def _poly_file(path: str, ctx: FieldCtx, nvars: int = 4):
    lines = [ln.strip() for ln in _read(path).splitlines()]
    text = " ".join(ln for ln in lines if ln and not ln.startswith("#"))
    return poly_parse(text, ctx, nvars)


def _search_ctx(ctx: FieldCtx, k: int) -> FieldCtx:
    if k < 1:
        raise InvalidInput("--search-k must be >= 1")
    return extend(ctx, k) if k > 1 else ctx


# -- subcommands ------------------------------------------------------------------

def cmd_bounds(args) -> Outcome:
    kind = args.kind
    if kind in ("gln", "gln_quintic_odd", "gln_swapped"):
        variant = {"gln": "main", "gln_quintic_odd": "quintic_odd", "gln_swapped": "swapped"}[kind]
        _need(args, "d", "n")
        rep = gln_bound(args.d, args.n, variant, args.delta)
    elif kind == "obstruction":
        _need(args, "m", "parity")
        dims = obstruction_locus_dims(args.m, args.parity)
        return Outcome(dims.to_dict(), f"family {dims.family_upper} vs Severi >= {dims.severi_lower}: "
                       f"general member escapes = {dims.general_escapes}")
    else:
        params = {"d": args.d, "n": args.n, "pa": args.pa, "K2": args.K2,
                  "ns_cyclic": args.ns_cyclic}
        if args.p is not None:
            params["p"] = Fraction(args.p)
        params = {k: v for k, v in params.items() if v is not None}
        try:
            rep = severi_bound(kind, args.delta, **params)
        except KeyError as exc:
            raise InvalidInput(f"--{exc.args[0]} is required for kind {kind}") from None
    return Outcome(rep.to_dict(), rep.verdict)


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InvalidInput(f"--{name.replace('_', '-')} is required")


def cmd_instability(args) -> Outcome:
    rep = instability_analyze(Fraction(args.lam), args.q, args.delta, args.ns_cyclic)
    return Outcome(rep.to_dict(), rep.note)


def cmd_conditions(args) -> Outcome:
    ctx = _field(args)
    pts = read_points(_read(args.points), ctx)
    rep = conditions_imposed(pts, args.degree)
    return Outcome(rep.to_dict(), f"{rep.num_points} points impose {rep.rank} conditions on degree "
                   f"{rep.t} forms; superabundance {rep.superabundance}")


def cmd_ci_oracle(args) -> Outcome:
    pred = koszul_ci_h0(args.a, args.b, args.c, args.t)
    out = pred.to_dict()
    out.update(a=args.a, b=args.b, c=args.c, t=args.t, superabundance=pred.superabundance_predicted)
    return Outcome(out, f"Koszul count: superabundance {pred.superabundance_predicted} at t = {args.t}")


def cmd_grid_ci(args) -> Outcome:
    ctx = _field(args)
    pts = random_grid_ci(args.a, args.b, args.c, ctx, args.seed, args.retries)
    rep = socle_report(pts, args.a, args.b, args.c)
    out = {"num_points": len(pts), "points": [format_point(p) for p in pts], "socle": rep.to_dict()}
    if args.degree is not None:
        cond = conditions_imposed(pts, args.degree)
        out["conditions"] = cond.to_dict()
        out["koszul"] = koszul_ci_h0(args.a, args.b, args.c, args.degree).to_dict()
    if args.out:
        Path(args.out).write_text(write_points(pts))
    return Outcome(out, f"grid CI {(args.a, args.b, args.c)}: {len(pts)} points, socle check "
                   f"{'passed' if rep.passed else 'FAILED'}")


def _curve_inputs(args):
    ctx = _field(args)
    if not args.surface or not args.curve:
        raise InvalidInput("--surface and --curve are required")
    return ctx, _poly_file(args.surface, ctx), _poly_file(args.curve, ctx)


def _curve_record(args):
    ctx, F, G = _curve_inputs(args)
    sctx = _search_ctx(ctx, args.search_k)
    nodes = read_points(_read(args.points), sctx) if args.points else None
    return make_curve_record(F, G, sctx, nodes, args.delta_expected)


def cmd_nodes(args) -> Outcome:
    ctx, F, G = _curve_inputs(args)
    sctx = _search_ctx(ctx, args.search_k)
    pts = singular_points(F, G, sctx)
    Fs, Gs = F.lift(sctx), G.lift(sctx)
    kinds = [node_classify(Fs, Gs, p) for p in pts]
    if args.out:
        Path(args.out).write_text(write_points(pts))
    out = {"search_field": sctx.spec_string(), "d": F.degree, "n": G.degree,
           "delta_found": len(pts), "points": [format_point(p) for p in pts], "kinds": kinds}
    return Outcome(out, f"{len(pts)} singular point(s) over {sctx}, "
                   f"{kinds.count('node')} node(s)", flags=[IRREDUCIBILITY_FLAG])


def cmd_severi(args) -> Outcome:
    rec = _curve_record(args)
    rep = severi_report(rec)
    return Outcome(rep.to_dict(), f"h1(I_N(n)) = {rep.h1_IN}; {rep.annotation}", flags=rep.flags)


def _load_record(path: str):
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not a JSON record: {exc.msg}") from None
    if isinstance(data, dict) and "result" in data:
        data = data["result"]
    if not isinstance(data, dict) or "record" not in data or "verification" not in data:
        raise InvalidInput(f"{path} does not hold a construct record")
    return ExampleRecord.from_dict(data["record"]), data["verification"]


def _status_exit(status: str) -> int:
    return {"complete": EXIT_OK, "degenerate": EXIT_DEGENERATE}.get(status, EXIT_INCONCLUSIVE)


def cmd_gln(args) -> Outcome:
    if args.record:
        rec, embedded = _load_record(args.record)
        if "search_field" not in embedded:
            raise InvalidInput("record has no verification search field")
        sctx = parse_field_spec(embedded["search_field"])
        nodes = read_points("\n".join(embedded.get("nodes", [])), sctx)
        fresh = assess_nodes(rec, sctx, nodes)
        reproduced = (fresh["status"] == embedded.get("status")
                      and fresh["verdict"] == embedded.get("verdict"))
        out = {"source": "record", "status": fresh["status"], "verdict": fresh["verdict"],
               "embedded_verdict": embedded.get("verdict"), "reproduced": reproduced,
               "delta_found": fresh["delta_found"], "expected_delta": rec.expected_delta}
        if len(nodes):
            cr = CurveRecord(rec.F.lift(sctx), rec.Xprime.lift(sctx), sctx, nodes, rec.expected_delta)
            out["gln"] = gln_check(cr).to_dict()
        code = _status_exit(fresh["status"]) if reproduced else EXIT_DEGENERATE
        return Outcome(out, f"{'reproduced' if reproduced else 'MISMATCH'}: {fresh['verdict']}", code,
                       flags=[IRREDUCIBILITY_FLAG],
                       warnings=[] if reproduced else ["verdict differs from the embedded one"])
    rec = _curve_record(args)
    rep = gln_check(rec)
    return Outcome(rep.to_dict(), f"superabundance {rep.superabundance} at degree {rep.test_degree}: "
                   f"{'geometrically linearly normal' if rep.gln else 'not geometrically linearly normal'}",
                   flags=rep.flags)


def cmd_construct(args) -> Outcome:
    ctx = _field(args)
    if args.sweep > 1:
        seeds = range(args.seed, args.seed + args.sweep)
        runs = sweep(args.parity, args.m, ctx, seeds, args.search_k, args.retries)
        rec, ver = runs[-1]
        tried = [{"seed": r.seed, "status": v["status"], "delta_found": v.get("delta_found")} for r, v in runs]
        ver = dict(ver, oracle_witness=oracle_witness(rec))
    else:
        rec = build_example(args.parity, args.m, ctx, args.seed, args.retries)
        ver = verify_example(rec, args.search_k)
        tried = [{"seed": rec.seed, "status": ver["status"], "delta_found": ver.get("delta_found")}]
    out = {"record": rec.to_dict(), "verification": ver, "seeds_tried": tried}
    code = _status_exit(ver["status"])
    warnings = []
    if code == EXIT_INCONCLUSIVE:
        warnings.append("node set incomplete over the search field; see oracle_witness for the "
                        "deterministic superabundance pattern")
    return Outcome(out, f"seed {rec.seed} attempt {rec.attempt}: {ver['verdict']}", code,
                   flags=[IRREDUCIBILITY_FLAG], warnings=warnings)


def cmd_plane_severi(args) -> Outcome:
    rep = plane_severi_check(args.d, args.delta)
    return Outcome(rep, f"dimension {rep['dimension']}, geometric genus {rep['genus']}")


# -- driver -------------------------------------------------------------------------

def _add_field(p, default="101"):
    p.add_argument("--field", default=default, help="p[,k[,modulus]] or Q")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="nodalcurves", description="Exact computations for nodal curves on surfaces.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bounds", help="node-count bounds")
    p.add_argument("--kind", required=True,
                   choices=["plane", "k3", "pluricanonical", "surface_p3", "quintic_odd",
                            "gln", "gln_quintic_odd", "gln_swapped", "obstruction"])
    for name in ("d", "n", "pa", "K2", "delta", "m"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--p", help="integer or rational a/b")
    p.add_argument("--parity", choices=["even", "odd"])
    p.add_argument("--ns-cyclic", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("instability", help="Bogomolov interval analysis")
    p.add_argument("--lambda", dest="lam", required=True, help="integer or rational a/b")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--ns-cyclic", action="store_true")
    p.set_defaults(func=cmd_instability)

    p = sub.add_parser("conditions", help="conditions imposed by a point file")
    _add_field(p)
    p.add_argument("--points", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_conditions)

    p = sub.add_parser("ci-oracle", help="Koszul count for a complete intersection")
    for name in ("a", "b", "c", "t"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_ci_oracle)

    p = sub.add_parser("grid-ci", help="random grid complete intersection")
    _add_field(p)
    for name in ("a", "b", "c"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--retries", type=int, default=DEFAULT_RETRIES)
    p.add_argument("--degree", type=int)
    p.add_argument("--out", help="write the points to this file")
    p.set_defaults(func=cmd_grid_ci)

    for name, func, text in (("nodes", cmd_nodes, "singular points of C = S . {G = 0}"),
                             ("severi", cmd_severi, "Severi tangent-space report"),
                             ("gln", cmd_gln, "geometric linear normality test")):
        p = sub.add_parser(name, help=text)
        _add_field(p)
        p.add_argument("--surface")
        p.add_argument("--curve")
        p.add_argument("--search-k", type=int, default=1)
        if name == "nodes":
            p.add_argument("--out", help="write the points to this file")
        else:
            p.add_argument("--points", help="node list; searched for when omitted")
            p.add_argument("--delta-expected", type=int)
        if name == "gln":
            p.add_argument("--record", help="re-assess a construct record")
        p.set_defaults(func=func)

    p = sub.add_parser("construct", help="build and verify a sharp example on a quintic")
    _add_field(p)
    p.add_argument("--parity", choices=["even", "odd"], default="even")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--retries", type=int, default=DEFAULT_RETRIES)
    p.add_argument("--search-k", type=int, default=1)
    p.add_argument("--sweep", type=int, default=1, help="number of consecutive seeds to try")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("plane-severi", help="plane Severi variety dimension and genus")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.set_defaults(func=cmd_plane_severi)
    return ap


def _jsonable(x):
    if isinstance(x, Fraction):
        return frac_str(x)
    if isinstance(x, float):
        raise TypeError("floating-point value in a report")
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _emit(command, echo, result, flags, warnings, out):
    env = {"tool_version": __version__, "command": command, "inputs_echo": echo,
           "result": result, "flags": flags, "warnings": warnings}
    out.write(json.dumps(_jsonable(env), indent=2, sort_keys=False) + "\n")


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except ArgError as exc:
        _emit(argv[0] if argv else None, {"argv": argv}, None, [], [f"usage error: {exc}"], stdout)
        stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    echo = {k: v for k, v in vars(args).items() if k != "func"}
    try:
        res = args.func(args)
    except NodalError as exc:
        code = exc.exit_code if exc.exit_code in (EXIT_INVALID, EXIT_DEGENERATE, EXIT_INCONCLUSIVE) else EXIT_INVALID
        result = {"error": type(exc).__name__, "message": str(exc)}
        _emit(args.command, echo, result, [], [str(exc)], stdout)
        stderr.write(f"{type(exc).__name__}: {exc}\n")
        return code
    except (ValueError, ZeroDivisionError) as exc:
        _emit(args.command, echo, {"error": "InvalidInput", "message": str(exc)}, [], [str(exc)], stdout)
        stderr.write(f"InvalidInput: {exc}\n")
        return EXIT_INVALID
    _emit(args.command, echo, res.result, res.flags, res.warnings, stdout)
    stderr.write(res.summary + "\n")
    for w in res.warnings:
        stderr.write(f"warning: {w}\n")
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
