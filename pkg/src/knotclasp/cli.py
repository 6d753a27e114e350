"""``knotclasp`` command line: JSON (or CSV) reports on stdout.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage or
input errors.  Output is deterministic: keys are sorted and lists come out
in a fixed order, so identical inputs give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import __version__
from .clasp import (
    ConwayGenus2,
    conway_genus2_of,
    genus_lower_from_conway,
    mod8_obstruction,
    two_clasp_realizable,
    two_clasp_realizable_oracle,
)
from .diagram import DiagramError, PdParseError, orient, parse_dt, parse_pd, seifert_genus
from .family import CHECKS, family_report
from .invariants import alexander, conway, jones
from .laurent import LaurentError, parse
from .tables import DATA_ENV, TableError, UnknownKnotError, audit, load_table, lookup

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# options whose values may start with '-' (negative ranges)
_RANGE_OPTS = ("--n-range", "--grid", "--conway")


class UsageError(Exception):
    def __init__(self, message: str, **extra):
        super().__init__(message)
        self.extra = extra


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n")


def _parse_range(text: str) -> range:
    try:
        lo, hi = text.split("..")
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"range must look like A..B, got {text!r}") from None
    if lo_i > hi_i:
        raise UsageError(f"empty range {text!r}")
    return range(lo_i, hi_i + 1)


def _diagram_from_args(args):
    sources = [s for s in (args.pd, args.dt, args.name) if s is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --pd, --dt, --name")
    if args.pd is not None:
        return orient(parse_pd(args.pd)), {"pd": args.pd}
    if args.dt is not None:
        return orient(parse_dt(args.dt)), {"dt": args.dt}
    rec = lookup(args.name)
    if rec.pd is None:
        raise UsageError(f"no PD code bundled for {rec.name}")
    return orient(rec.pd), {"name": rec.name}


def cmd_invariants(args) -> int:
    d, source = _diagram_from_args(args)
    out = {
        "input": source,
        "crossings": d.n_crossings,
        "components": d.n_components,
        "writhe": d.writhe,
        "jones": jones(d, workers=args.workers).format("t"),
    }
    if d.is_knot:
        out["alexander"] = alexander(d).format("t")
        out["conway"] = conway(d).format("z")
        out["seifert_genus"] = seifert_genus(d)
    else:
        reason = "computed for knots only"
        out["alexander"] = out["conway"] = out["seifert_genus"] = None
        out["omitted"] = {"alexander": reason, "conway": reason, "seifert_genus": reason}
    _emit(out)
    return EXIT_OK


def _conway_from_args(args):
    sources = [s for s in (args.name, args.conway, args.poly) if s is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --name, --conway, --poly")
    if args.conway is not None:
        try:
            m4, m2 = (int(v) for v in args.conway.split(","))
        except ValueError:
            raise UsageError(f"--conway expects 'm4,m2', got {args.conway!r}") from None
        return ConwayGenus2(m4, m2).poly(), {"conway": args.conway}
    if args.poly is not None:
        return parse(args.poly, "z"), {"poly": args.poly}
    rec = lookup(args.name)
    if rec.pd is None:
        raise UsageError(f"no PD code bundled for {rec.name}")
    return conway(orient(rec.pd)), {"name": rec.name}


def cmd_obstruct(args) -> int:
    nabla, source = _conway_from_args(args)
    try:
        shape = conway_genus2_of(nabla)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    w = two_clasp_realizable(shape)
    genus_lb = genus_lower_from_conway(nabla)
    _emit(
        {
            "input": source,
            "conway": nabla.format("z"),
            "m4": shape.m4,
            "m2": shape.m2,
            "mod8_fires": mod8_obstruction(shape),
            "realizable": bool(w),
            "witness": w.as_list() if w else None,
            "clasp_lower": genus_lb if w else 3,
        }
    )
    return EXIT_OK


def cmd_family(args) -> int:
    n_range = _parse_range(args.n_range)
    checks = [c.strip() for c in args.check.split(",") if c.strip()]
    bad = set(checks) - set(CHECKS) - {"all"}
    if bad:
        raise UsageError(f"unknown checks {sorted(bad)}; choose from {', '.join(CHECKS + ('all',))}")
    rep = family_report(list(n_range), checks)
    out = rep.to_json()
    out["n_range"] = [n_range.start, n_range.stop - 1]
    _emit(out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_audit(args) -> int:
    path = None
    if args.data is not None:
        path = os.path.join(args.data, "clasp_table.txt")
    rep = audit(load_table(path), workers=args.workers)
    if args.csv:
        sys.stdout.write(rep.to_csv())
    else:
        _emit(rep.to_json())
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_realize(args) -> int:
    grid = _parse_range(args.grid)
    points = realizable = agree = 0
    beyond, contradictions, dominance = [], [], []
    for m4 in grid:
        for m2 in grid:
            c = ConwayGenus2(m4, m2)
            w = two_clasp_realizable(c)
            o = two_clasp_realizable_oracle(c, args.bound)
            points += 1
            realizable += bool(w)
            if w and w.coefficients() != c:
                contradictions.append({"m4": m4, "m2": m2, "reason": "witness does not reconstruct"})
            if mod8_obstruction(c) and w:
                dominance.append({"m4": m4, "m2": m2})
            if bool(w) == bool(o):
                agree += 1
                continue
            size = max(abs(w.b1), abs(w.b2), abs(w.b3)) if w else None
            if w and size > args.bound:
                beyond.append({"m4": m4, "m2": m2, "witness": w.as_list(), "max_abs": size})
            else:
                contradictions.append({"m4": m4, "m2": m2, "reason": "decision and oracle disagree"})
    _emit(
        {
            "grid": [grid.start, grid.stop - 1],
            "bound": args.bound,
            "points": points,
            "realizable": realizable,
            "agree": agree,
            "witness_beyond_bound": beyond,
            "contradictions": contradictions,
            "mod8_dominance_violations": dominance,
            "passed": not contradictions and not dominance,
        }
    )
    return EXIT_OK if not contradictions and not dominance else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="knotclasp", description="Knot invariants and clasp-number bounds.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariants", help="polynomial invariants of a diagram")
    s.add_argument("--pd", help="PD code, e.g. 'X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]'")
    s.add_argument("--dt", help="DT code, e.g. '4 6 2'")
    s.add_argument("--name", help="table name, e.g. 10_97")
    s.add_argument("--workers", type=int, default=None, help="processes for the Jones state sum")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("obstruct", help="clasp-number obstruction verdict for a Conway polynomial")
    s.add_argument("--name")
    s.add_argument("--conway", help="coefficients 'm4,m2' of m4 z^4 + m2 z^2 + 1")
    s.add_argument("--poly", help="Conway polynomial text, e.g. '-5*z^4 + 2*z^2 + 1'")
    s.set_defaults(func=cmd_obstruct)

    s = sub.add_parser("family", help="checks on the twist family K_n")
    s.add_argument("--n-range", default="-3..3")
    s.add_argument("--check", default="all", help=f"comma-separated from {', '.join(CHECKS)}, all")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("audit", help="audit the bundled clasp-number table")
    s.add_argument("--data", help=f"data directory (default: ${DATA_ENV} or the bundled data)")
    s.add_argument("--csv", action="store_true", help="CSV instead of JSON")
    s.add_argument("--workers", type=int, default=None)
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("realize", help="two-clasp decision vs brute-force oracle on a grid")
    s.add_argument("--grid", default="-20..20")
    s.add_argument("--bound", type=int, default=50)
    s.set_defaults(func=cmd_realize)
    return p


def _join_range_values(argv: Sequence[str]) -> list[str]:
    out: list[str] = []
    it = iter(argv)
    for a in it:
        if a in _RANGE_OPTS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_join_range_values(argv))
    try:
        return args.func(args)
    except UsageError as exc:
        _emit({"error": str(exc), **exc.extra})
    except PdParseError as exc:
        _emit({"error": str(exc), "kind": type(exc).__name__, "position": exc.position})
    except UnknownKnotError as exc:
        _emit({"error": str(exc), "near_matches": exc.near})
    except (DiagramError, LaurentError, TableError) as exc:
        _emit({"error": str(exc), "kind": type(exc).__name__})
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
