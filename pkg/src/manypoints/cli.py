"""Command-line interface: ``python -m manypoints <command> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors.  ``--format json`` emits one object with a fixed schema version.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bounds, tables
from .code import build_Ch, build_melas_dual, generalized_hamming_weight
from .construct.method1 import method1, method1_variants
from .construct.method3 import degree4_family, method3, quadric_family
from .construct.method4 import method4, product_subcode
from .construct.quadratic import method2
from .construct.result import replay
from .curve import (
    ArtinSchreierCurve,
    FibreProductSpec,
    check_zeta,
    counts_from_zeta,
    curve_report,
    fibre_report,
)
from .errors import ManyPointsError
from .function import parse_curve, parse_function
from .gf import parse_field_spec

SCHEMA_VERSION = 1
OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- output ------------------------------------------------------------------------


def _emit(out, args, payload: dict, lines: list[str]):
    if args.format == "json":
        doc = {"version": SCHEMA_VERSION, "command": args.command, "seed": args.seed}
        doc.update(payload)
        out.write(json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def _md_table(rows: list[tuple]) -> list[str]:
    head, *body = rows
    lines = ["| " + " | ".join(map(str, head)) + " |", "|" + "---|" * len(head)]
    lines += ["| " + " | ".join("" if v is None else str(v) for v in r) + " |" for r in body]
    return lines


# -- commands ----------------------------------------------------------------------


def _functions(args, tbl):
    if args.curve:
        return [parse_curve(args.curve, tbl)]
    if args.function:
        return [parse_function(s, tbl) for s in args.function]
    raise UsageError("give --curve or at least one --function")


def cmd_count(args, out) -> int:
    tbl = parse_field_spec(args.field)
    fs = _functions(args, tbl)
    if len(fs) == 1:
        curve = ArtinSchreierCurve.reduced(fs[0])
        rep = curve_report(curve, extensions=args.extensions, zeta=args.command == "zeta")
        payload = {"field": str(tbl.spec), "curve": repr(curve), **rep.as_dict()}
        lines = [f"curve: {curve!r}", f"genus: {rep.genus}", f"points: {rep.counts[0]}",
                 f"trace: {rep.trace_frobenius}"]
        if len(rep.counts) > 1:
            lines.append("counts over extensions: " + ", ".join(map(str, rep.counts)))
        status = OK
        if rep.zeta_numerator is not None:
            good = check_zeta(tbl.q, rep.zeta_numerator)
            predicted = counts_from_zeta(tbl.q, rep.zeta_numerator, len(rep.counts))
            payload["zeta_check"] = good
            payload["predicted_counts"] = predicted
            lines.append("zeta numerator: " + " ".join(map(str, rep.zeta_numerator)))
            lines.append(f"functional equation and |alpha| = sqrt(q): {'ok' if good else 'FAILED'}")
            if not good or predicted != rep.counts:
                status = FAILED
        _emit(out, args, payload, lines)
        return status
    if args.command == "zeta":
        raise UsageError("zeta takes a single curve")
    rep = fibre_report(FibreProductSpec(tuple(fs)))
    payload = {"field": str(tbl.spec), "basis": [str(f) for f in fs], **rep}
    lines = [f"fibre product of {len(fs)} covers over {tbl.spec}"] + [f"{k}: {v}" for k, v in rep.items()]
    _emit(out, args, payload, lines)
    return OK


def cmd_genus(args, out) -> int:
    tbl = parse_field_spec(args.field)
    fs = _functions(args, tbl)
    if len(fs) == 1:
        g = curve_report(ArtinSchreierCurve.reduced(fs[0])).genus
    else:
        g = fibre_report(FibreProductSpec(tuple(fs)))["genus"]
    _emit(out, args, {"field": str(tbl.spec), "genus": g}, [f"genus: {g}"])
    return OK


def _build_construction(args):
    tbl = parse_field_spec(args.field)
    m = args.method
    if m == "I":
        return [method1(tbl, args.r)]
    if m == "I-variant":
        params = json.loads(args.params) if args.params else None
        return method1_variants(tbl, args.family or "shifted", params, max_dim=args.r, budget=args.budget)
    if m == "II":
        return [method2(tbl, args.r)]
    if m == "III":
        fam = args.family or "translate"
        if fam == "translate":
            return [method3(tbl, args.r, budget=args.budget)]
        if fam == "quadric":
            return [quadric_family(tbl, budget=args.budget)]
        if fam == "degree4":
            return [degree4_family(tbl, budget=args.budget)]
        raise UsageError(f"unknown family {fam!r} for method III")
    if m == "IV":
        if args.family == "products":
            return [product_subcode(tbl, args.r)]
        code = _code(args, tbl)
        return [method4(code, args.r, strategy=args.strategy, budget=args.budget, seed=args.seed, samples=args.samples)]
    raise UsageError(f"unknown method {m!r}")


def cmd_construct(args, out) -> int:
    results = _build_construction(args)
    records = [r.to_record() for r in results]
    if args.record:
        with open(args.record, "w", encoding="utf-8") as fh:
            json.dump(records if len(records) > 1 else records[0], fh, indent=2, sort_keys=True)
    rows = [("method", "genus", "N", "claimed N", "status")]
    rows += [(r.method, r.genus, r.count, r.claimed_count, r.status) for r in results]
    lines = _md_table(rows)
    for r in results[:1]:
        lines += ["", "basis:"] + [f"  {f}" for f in records[0]["basis"]]
    _emit(out, args, {"results": records}, lines)
    return OK if all(r.ok for r in results) else FAILED


def cmd_bounds(args, out) -> int:
    explicit = None
    if args.explicit:
        explicit = bounds.ExplicitFormulaParams([Fraction(x) for x in args.explicit.split(",")])
    bs = bounds.best_upper(args.q, args.g, explicit=explicit)
    payload = bs.as_dict()
    if args.search:
        value, params = bounds.search_explicit_formula(args.q, args.g, k=args.search)
        payload["explicit_search"] = {"bound": value, "u": [float(x) for x in params.u],
                                      "note": "upper bound, not necessarily optimal"}
    rows = [("q", "g", "Hasse-Weil", "Serre", "Ihara", "combined", "explicit")]
    rows.append((bs.q, bs.g, bs.hasse_weil, bs.serre, bs.ihara, bs.combined,
                 payload.get("explicit_search", {}).get("bound", bs.explicit_formula)))
    lines = _md_table(rows)
    if bs.shaved:
        lines.append("combined lowered by one: no maximal curve of this genus exists")
    _emit(out, args, payload, lines)
    return OK


def cmd_table(args, out) -> int:
    t = tables.load_paper_tables().select(provenance=args.provenance, q=args.q, gmax=args.gmax)
    out.write(tables.render(t, args.format))
    return OK


def cmd_verify(args, out) -> int:
    if args.record:
        with open(args.record, encoding="utf-8") as fh:
            data = json.load(fh)
        records = data if isinstance(data, list) else [data]
        results = [replay(rec) for rec in records]
        rows = [("method", "genus", "N", "claimed N", "status")]
        rows += [(r.method, r.genus, r.count, r.claimed_count, r.status) for r in results]
        _emit(out, args, {"results": [r.to_record() for r in results]}, _md_table(rows))
        return OK if all(r.ok for r in results) else FAILED
    if args.suite != "paper":
        raise UsageError("give --suite paper or --record FILE")
    from .suite import paper_suite

    outcome = paper_suite()
    rep = outcome.report
    payload = {
        "ok": outcome.ok,
        "summary": rep.summary(),
        "failed": [r.to_record() for r in outcome.results if not r.ok],
        "violations": [vars(r) for r in rep.violations],
        "missing": [e.row() for e in rep.missing],
    }
    rows = [("q", "g", "N", "status", "optimal", "reference", "cell")]
    rows += [(r.q, r.g, r.count, r.status, "yes" if r.optimal else "", r.reference, r.detail) for r in rep.rows]
    lines = [f"constructions: {len(outcome.results)}, all verified: {all(r.ok for r in outcome.results)}",
             "summary: " + ", ".join(f"{k}={v}" for k, v in rep.summary().items()), ""] + _md_table(rows)
    _emit(out, args, payload, lines)
    return OK if outcome.ok else FAILED


def _code(args, tbl):
    if args.code == "melas":
        return build_melas_dual(tbl)
    return build_Ch(tbl, args.h, punctured=args.punctured)


def cmd_ghw(args, out) -> int:
    tbl = parse_field_spec(args.field)
    code = _code(args, tbl)
    rs = [args.r] if args.r else list(range(1, code.dim + 1))
    res = [generalized_hamming_weight(code, r, strategy=args.strategy, budget=args.budget, seed=args.seed,
                                      samples=args.samples) for r in rs]
    rows = [("r", "d_r", "exact")] + [(x.r, x.weight, x.exact) for x in res]
    lines = [repr(code)] + _md_table(rows)
    _emit(out, args, {"code": repr(code), "weights": [x.as_dict() for x in res]}, lines)
    return OK


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["markdown", "json"], default="markdown")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1, help="worker cap; searches here are single-threaded")

    p = _Parser(prog="manypoints", description="Curves over finite fields with many points.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def curve_args(sp):
        sp.add_argument("--field", required=True, help="p^m, p^m/c0,...,cm or a prime power")
        sp.add_argument("--curve", help="'y^p - y = f(x)'")
        sp.add_argument("--function", action="append", help="f(x); repeat for a fibre product")

    for name in ("count", "zeta"):
        sp = sub.add_parser(name, parents=[common])
        curve_args(sp)
        sp.add_argument("--extensions", type=int, default=1)
        sp.set_defaults(run=cmd_count)
    sp = sub.add_parser("genus", parents=[common])
    curve_args(sp)
    sp.set_defaults(run=cmd_genus)

    def code_args(sp):
        sp.add_argument("--code", choices=["Ch", "melas"], default="Ch")
        sp.add_argument("--h", type=int, default=1)
        sp.add_argument("--punctured", action="store_true")
        sp.add_argument("--strategy", choices=["exhaustive", "randomized"], default="exhaustive")
        sp.add_argument("--samples", type=int, default=20000)

    sp = sub.add_parser("construct", parents=[common])
    sp.add_argument("--method", required=True, choices=["I", "I-variant", "II", "III", "IV"])
    sp.add_argument("--field", required=True)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--family", help="variant family (shifted/twoterm/threeterm), III family "
                                     "(translate/quadric/degree4) or IV family (products)")
    sp.add_argument("--params", help="JSON parameters for I-variant families")
    sp.add_argument("--budget", type=int, default=10**7)
    sp.add_argument("--record", help="write the replayable record to this file")
    code_args(sp)
    sp.set_defaults(run=cmd_construct)

    sp = sub.add_parser("bounds", parents=[common])
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--explicit", help="comma-separated u_1,...,u_k (fractions allowed)")
    sp.add_argument("--search", type=int, default=0, metavar="K", help="search a K-term test function")
    sp.set_defaults(run=cmd_bounds)

    sp = sub.add_parser("table")
    sp.add_argument("--format", choices=list(tables.FORMATS), default="markdown")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--provenance")
    sp.add_argument("--q", type=int)
    sp.add_argument("--gmax", type=int)
    sp.set_defaults(run=cmd_table)

    sp = sub.add_parser("verify", parents=[common])
    sp.add_argument("--suite", choices=["paper"])
    sp.add_argument("--record", help="replay a record written by construct --record")
    sp.set_defaults(run=cmd_verify)

    sp = sub.add_parser("ghw", parents=[common])
    sp.add_argument("--field", required=True)
    sp.add_argument("--r", type=int)
    sp.add_argument("--budget", type=int, default=10**8)
    code_args(sp)
    sp.set_defaults(run=cmd_ghw)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "jobs", 1) < 1 or getattr(args, "budget", 1) < 1:
            raise UsageError("--jobs and --budget must be positive")
        return args.run(args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return USAGE
    except ManyPointsError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return USAGE
    except (OSError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return USAGE


def main() -> None:
    sys.exit(run())
