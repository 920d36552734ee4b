"""Command-line front end.

Exit codes: 0 success, 2 usage or domain error, 3 data mismatch (a failed
check, a conjecture counterexample, an OEIS disagreement), 4 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from decimal import Decimal
from pathlib import Path

from . import __version__
from .classes import (
    classes_for,
    conjugate_class,
    tandem_balancer_class,
)
from .core import GapContext, counterbalancer_of
from .errors import DomainError, GapBalError, InvariantError
from .identities import DEFAULT_LARGE_B, DEFAULT_PRECISION, DEFAULT_TOLERANCE, exact_suite, limit_suite
from .oeis import SOURCES, URL_ENV, check_sequence, fixture_dir, load_alignments, refresh
from .series import class_genfun, expand, interleaved_genfun, poly_str
from .survey import CSV_FIELDS, check_conjecture, sweep, table1
from .tables import term_table
from .transitions import (
    NON_INTEGRAL,
    check_conjugate_symmetry,
    derive_balancer_transition,
    derive_transition,
    describe,
)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_INTERNAL = 0, 2, 3, 4

JOBS_ENV = "GAPBAL_JOBS"
PRECISION_ENV = "GAPBAL_PRECISION"

FIELDS = ("B", "C", "m", "r", "rhat")


class UsageError(GapBalError):
    pass


class Result:
    """What a command hands back for rendering."""

    def __init__(self, context: dict, payload: dict, table=None, text: str | None = None, exit_code: int = EXIT_OK):
        self.context = context
        self.payload = payload
        self.table = table  # (columns, rows) for text/csv rendering
        self.text = text
        self.exit_code = exit_code


def _cell_json(v):
    if v is NON_INTEGRAL:
        return {"value": None, "reason": "non-integral"}
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return str(v)
    return v


def _cell_text(v) -> str:
    if v is NON_INTEGRAL:
        return "*"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _cell_csv(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    return _cell_text(v)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Decimal):
        return str(obj)
    return _cell_json(obj)


def render_text_table(columns: list[str], rows: list[list]) -> str:
    cells = [[_cell_text(c) for c in row] for row in rows]
    widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(columns)]
    out = ["  ".join(h.rjust(w) for h, w in zip(columns, widths))]
    out.append("  ".join("-" * w for w in widths))
    for r in cells:
        out.append("  ".join(c.rjust(w) for c, w in zip(r, widths)))
    return "\n".join(out)


def render(command: str, result: Result, fmt: str) -> str:
    if fmt == "json":
        envelope = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "context": _jsonable(result.context),
            "payload": _jsonable(result.payload),
        }
        return json.dumps(envelope, indent=2, sort_keys=False)
    if fmt == "csv":
        if result.table is None:
            raise UsageError(f"{command} has no CSV form")
        columns, rows = result.table
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_cell_csv(c) for c in row])
        return buf.getvalue().rstrip("\n")
    parts = []
    if result.text:
        parts.append(result.text)
    if result.table is not None:
        parts.append(render_text_table(*result.table))
    return "\n".join(parts)


def _check_k(k: int) -> GapContext:
    if k < 0:
        raise UsageError(f"--k must be >= 0, got {k}")
    return GapContext(k)


def _class_at(k: int, index: int):
    classes = classes_for(_check_k(k))
    if not 0 <= index < len(classes):
        raise UsageError(f"class index {index} out of range; k={k} has {len(classes)} classes")
    return classes, classes[index]


# commands


def cmd_seeds(args) -> Result:
    ctx = _check_k(args.k)
    classes = classes_for(ctx)
    columns = ["class", "seed_x", "seed_y", "conjugate", "ambiguous", "B0", "C0"]
    rows = []
    for c in classes:
        if c.seed is None:
            rows.append([c.label(), "-", "-", c.label(), False, c.initial_pair.B, c.initial_pair.C])
            continue
        conj = conjugate_class(c, classes)
        rows.append([c.label(), c.seed.x, c.seed.y, conj.label(), c.seed.is_ambiguous,
                     c.initial_pair.B, c.initial_pair.C])
    note = None
    if ctx.k == 0:
        note = "k = 0: a single class with initial pair (0, 1) and no seed."
    payload = {"classes": [dict(zip(columns, r)) for r in rows], "class_count": len(classes)}
    return Result({"k": ctx.k}, payload, (columns, rows), note)


def cmd_class(args) -> Result:
    fields = [f.strip() for f in args.fields.split(",") if f.strip()]
    bad = [f for f in fields if f not in FIELDS]
    if bad:
        raise UsageError(f"unknown field(s) {', '.join(bad)}; choose from {', '.join(FIELDS)}")
    if args.terms < 1:
        raise UsageError("--terms must be >= 1")
    _, cls = _class_at(args.k, args.index)
    pairs = cls.pairs(args.terms)
    bal = tandem_balancer_class(cls).pairs(args.terms)
    series = {
        "B": [p.B for p in pairs],
        "C": [p.C for p in pairs],
        "m": [counterbalancer_of(p) for p in pairs],
        "r": [q.r for q in bal],
        "rhat": [q.r_hat for q in bal],
    }
    columns = ["i"] + fields
    rows = [[i] + [series[f][i] for f in fields] for i in range(args.terms)]
    payload = {"class": cls.label(), "terms": {f: series[f] for f in fields}}
    return Result({"k": args.k, "index": args.index, "terms": args.terms}, payload, (columns, rows))


def cmd_table2(args) -> Result:
    _check_k(args.k)
    t = term_table(args.k, args.terms)
    columns = ["i"] + t.columns
    rows = [[name] + cells for name, cells in t.rows]
    payload = {"columns": t.columns, "rows": {name: cells for name, cells in t.rows}}
    return Result({"k": args.k, "terms": args.terms}, payload, (columns, rows))


def cmd_transition(args) -> Result:
    classes, src = _class_at(args.k, args.source)
    _, dst = _class_at(args.k, args.target)
    t = derive_transition(src, dst, args.shift)
    T = derive_balancer_transition(tandem_balancer_class(src), tandem_balancer_class(dst), args.shift)
    bal, bal_hat = t.formulas()
    ba, ba_hat = T.formulas()
    columns = ["map", "formula"]
    rows = [["t", bal], ["t_hat", bal_hat], ["T", ba], ["T_hat", ba_hat]]
    payload = {"balancing": describe(t), "balancer": describe(T),
               "source": src.label(), "target": dst.label(), "shift": args.shift}
    return Result({"k": args.k, "from": args.source, "to": args.target, "shift": args.shift},
                  payload, (columns, rows))


def cmd_genfun(args) -> Result:
    ctx = _check_k(args.k)
    if args.index is None:
        rf = interleaved_genfun(ctx)
        label = "all classes"
    else:
        _, cls = _class_at(args.k, args.index)
        rf = class_genfun(cls)
        label = f"class {cls.label()}"
    coeffs = expand(rf, args.terms)
    text = f"G(s) [{label}] = ({poly_str(rf.numerator)}) / ({poly_str(rf.denominator)})"
    payload = {
        "numerator": list(rf.numerator),
        "denominator": list(rf.denominator),
        "series": coeffs,
    }
    rows = [[i, c] for i, c in enumerate(coeffs)]
    return Result({"k": args.k, "index": args.index, "terms": args.terms}, payload, (["i", "coefficient"], rows), text)


def cmd_verify(args) -> Result:
    ctx = _check_k(args.k)
    classes = classes_for(ctx)
    kwargs = {"precision": args.precision, "tolerance": Decimal(args.tolerance), "large_b": int(Decimal(args.large_b))}
    reports = []
    for cls in classes:
        reports += exact_suite(cls, args.terms)
        if not args.no_limits:
            reports += limit_suite(cls, args.limit_terms, **kwargs)
    checks = [
        [r.name, r.class_index, "pass" if r.passed else "FAIL", "; ".join(r.failures)] for r in reports
    ]
    sym = check_conjugate_symmetry(ctx)
    sym_ok = all(s.holds for s in sym)
    checks.append(["conjugate_symmetry", "-", "pass" if sym_ok else "FAIL", f"{len(sym)} comparisons"])
    n = args.terms
    merged = sorted(b for c in classes for b in c.B_values(n))
    gf_ok = expand(interleaved_genfun(ctx), n * len(classes)) == merged
    checks.append(["interleaved_genfun", "-", "pass" if gf_ok else "FAIL", f"{n * len(classes)} coefficients"])
    failed = [c for c in checks if c[2] == "FAIL"]
    payload = {"checks": [dict(zip(["check", "class", "status", "detail"], c)) for c in checks],
               "failures": len(failed)}
    text = f"{len(checks) - len(failed)}/{len(checks)} checks passed"
    return Result({"k": args.k, "terms": n}, payload, (["check", "class", "status", "detail"], checks), text,
                  EXIT_MISMATCH if failed else EXIT_OK)


def cmd_conjecture(args) -> Result:
    if args.k_min < 0 or args.k_max < args.k_min:
        raise UsageError("need 0 <= --k-min <= --k-max")
    if args.format == "csv":
        # every record, not only mismatches
        records = sweep(args.k_min, args.k_max, args.jobs)
        mismatches = [r for r in records if not r.conjecture_holds]
        rows = [[r.k, r.class_count, r.divisor_count, r.ambiguous] for r in records]
        return Result({}, {}, (list(CSV_FIELDS), rows), exit_code=EXIT_MISMATCH if mismatches else EXIT_OK)
    mismatches = check_conjecture(args.k_min, args.k_max, args.jobs)
    payload = {"checked": args.k_max - args.k_min + 1, "mismatches": [m.as_row() for m in mismatches]}
    text = f"{len(mismatches)} mismatches for k in [{args.k_min}, {args.k_max}]"
    rows = [[m.k, m.class_count, m.divisor_count, m.ambiguous] for m in mismatches]
    table = (["k", "class_count", "divisor_count", "ambiguous"], rows) if rows else None
    return Result({"k_min": args.k_min, "k_max": args.k_max}, payload, table, text,
                  EXIT_MISMATCH if mismatches else EXIT_OK)


def cmd_table1(args) -> Result:
    if args.k_max < 0:
        raise UsageError("--k-max must be >= 0")
    smallest = table1(args.k_max, args.jobs)
    rows = [[n, k] for n, k in smallest.items()]
    text = "observed class counts: " + ", ".join(str(n) for n in smallest)
    payload = {"smallest_k": {str(n): k for n, k in smallest.items()}, "observed_counts": list(smallest)}
    return Result({"k_max": args.k_max}, payload, (["n", "k"], rows), text)


def _oeis_ids(ids: list[str]) -> list[str]:
    return ids or list(SOURCES)


def cmd_oeis_check(args) -> Result:
    directory = Path(args.fixtures) if args.fixtures else fixture_dir()
    pinned = load_alignments(directory)
    rows = []
    results = []
    bad = 0
    for sid in _oeis_ids(args.ids):
        rep = check_sequence(sid, args.terms, directory, args.window, min(args.min_terms, args.terms))
        pin = pinned.get(sid, {}).get("position")
        pin_ok = pin is None or pin == rep.position
        ok = rep.matched and pin_ok
        bad += not ok
        detail = ""
        if rep.first_mismatch:
            j, exp, got = rep.first_mismatch
            detail = f"term {j}: fixture {exp}, generated {got}"
        elif not pin_ok:
            detail = f"alignment moved from pinned position {pin}"
        rows.append([sid, SOURCES[sid].description, "match" if ok else "MISMATCH",
                     "-" if rep.offset is None else rep.offset, rep.compared, detail])
        results.append({"id": sid, "matched": ok, "position": rep.position, "offset": rep.offset,
                        "compared": rep.compared, "pinned_position": pin, "detail": detail})
    columns = ["id", "sequence", "status", "offset", "compared", "detail"]
    return Result({"fixtures": str(directory)}, {"results": results}, (columns, rows),
                  exit_code=EXIT_MISMATCH if bad else EXIT_OK)


def cmd_oeis_refresh(args) -> Result:
    directory = Path(args.fixtures) if args.fixtures else fixture_dir()
    if args.url:
        os.environ[URL_ENV] = args.url
    rows = []
    for sid in _oeis_ids(args.ids):
        bfile, fetched = refresh(sid, directory, args.timeout)
        rows.append([sid, "fetched" if fetched else "kept fixture", len(bfile.entries)])
    payload = {"results": [dict(zip(["id", "status", "entries"], r)) for r in rows]}
    return Result({"fixtures": str(directory)}, payload, (["id", "status", "entries"], rows))


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.environ.get(name, default))
    except ValueError:
        return default


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = argparse.ArgumentParser(prog="gapbal", description="Classes of upper k-gap balancing numbers.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("seeds", parents=[common], help="seeds, conjugates and initial pairs")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_seeds)

    s = sub.add_parser("class", parents=[common], help="terms of one class")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--index", type=int, default=0)
    s.add_argument("--terms", type=int, default=10)
    s.add_argument("--fields", default="B,C,m,r,rhat")
    s.set_defaults(func=cmd_class)

    s = sub.add_parser("table2", parents=[common], help="term table with transition rows (default k = 9)")
    s.add_argument("--k", type=int, default=9)
    s.add_argument("--terms", type=int, default=3)
    s.set_defaults(func=cmd_table2)

    s = sub.add_parser("verify", parents=[common], help="run the identity suite; exit 3 on failure")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--terms", type=int, default=30)
    s.add_argument("--limit-terms", type=int, default=25)
    s.add_argument("--precision", type=int, default=_env_int(PRECISION_ENV, DEFAULT_PRECISION))
    s.add_argument("--tolerance", default=str(DEFAULT_TOLERANCE))
    s.add_argument("--large-b", default=str(DEFAULT_LARGE_B))
    s.add_argument("--no-limits", action="store_true", help="skip the decimal limit checks")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("transition", parents=[common], help="transition maps between two classes")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--from", dest="source", type=int, required=True)
    s.add_argument("--to", dest="target", type=int, required=True)
    s.add_argument("--shift", type=int, default=0, help="advance the target class by this many terms")
    s.set_defaults(func=cmd_transition)

    s = sub.add_parser("genfun", parents=[common], help="generating function and its expansion")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--index", type=int, default=None, help="one class; omit for all classes interleaved")
    s.add_argument("--terms", type=int, default=12)
    s.set_defaults(func=cmd_genfun)

    jobs_default = _env_int(JOBS_ENV, 1)
    s = sub.add_parser("conjecture", parents=[common], help="class count versus divisor count")
    s.add_argument("--k-min", type=int, default=0)
    s.add_argument("--k-max", type=int, required=True)
    s.add_argument("--jobs", type=int, default=jobs_default)
    s.set_defaults(func=cmd_conjecture)

    s = sub.add_parser("table1", parents=[common], help="smallest k for each class count")
    s.add_argument("--k-max", type=int, required=True)
    s.add_argument("--jobs", type=int, default=jobs_default)
    s.set_defaults(func=cmd_table1)

    s = sub.add_parser("oeis-check", parents=[common], help="compare generated sequences with b-file fixtures")
    s.add_argument("ids", nargs="*", metavar="ID")
    s.add_argument("--terms", type=int, default=20)
    s.add_argument("--window", type=int, default=5)
    s.add_argument("--min-terms", type=int, default=15)
    s.add_argument("--fixtures", default=None, help="fixture directory (env GAPBAL_FIXTURES)")
    s.set_defaults(func=cmd_oeis_check)

    s = sub.add_parser("oeis-refresh", parents=[common], help="download b-files over the fixtures")
    s.add_argument("ids", nargs="*", metavar="ID")
    s.add_argument("--fixtures", default=None)
    s.add_argument("--url", default=None, help="URL template with {id} and {number} (env GAPBAL_OEIS_URL)")
    s.add_argument("--timeout", type=float, default=None)
    s.set_defaults(func=cmd_oeis_refresh)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        result = args.func(args)
        out = render(args.command, result, args.format)
    except (UsageError, DomainError) as exc:
        print(f"gapbal {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantError as exc:
        print(f"gapbal {args.command}: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except FileNotFoundError as exc:
        print(f"gapbal {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(out)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
