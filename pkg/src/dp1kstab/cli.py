"""``dp1kstab`` command line.

Exit codes: 0 ok (an Inconclusive verdict is still ok), 1 usage or parse
error, 2 class not ample, 3 closed form and oracle disagree or selftest fails.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import product

from . import report
from .alpha import alpha_report, compare
from .cones import decompose, is_ample, require_ample
from .errors import DelPezzoError, NotAmple, ParseError
from .kstab import verdict
from .lattice import DivClass, intersect
from .parsing import parse_class
from .sampling import STRATA, stratified
from .selftest import format_results, run_selftest

EXIT_OK, EXIT_USAGE, EXIT_NOT_AMPLE, EXIT_DISAGREE = 0, 1, 2, 3
COMMANDS = ("check", "decompose", "alpha", "verdict", "scan", "oracle-compare", "selftest")


class UsageError(Exception):
    pass


def _range(text: str) -> tuple[Fraction, Fraction]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"range must look like a/b:c/d, got {text!r}")
    try:
        lo_q, hi_q = Fraction(lo.strip()), Fraction(hi.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad rational in range {text!r}") from None
    if hi_q <= lo_q:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo_q, hi_q


def _steps(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("steps must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dp1kstab", description="K-stability checks for ample classes on a degree 1 del Pezzo surface.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--class", dest="cls", metavar="SPEC", help='9 rationals "b,b1,...,b8" or e.g. "-K + 1/2*E1"')
    p.add_argument("--scan-dir", action="append", default=[], metavar="SPEC", help="scan direction (up to two)")
    p.add_argument("--range", action="append", default=[], type=_range, metavar="a/b:c/d", help="half-open parameter range per direction")
    p.add_argument("--steps", action="append", default=[], type=_steps, metavar="N", help="grid points per direction")
    p.add_argument("--extended-oracle", action="store_true", help="also take multiplicities along the 2160 conic classes")
    p.add_argument("--normalization", choices=("A", "muA", "both"), default="muA")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for scan and oracle-compare (output order is fixed)")
    g = p.add_argument_group("oracle-compare")
    g.add_argument("--suite-size", type=_steps, default=4, help="samples per stratum")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--strata", default=",".join(STRATA), help="comma-separated subset of " + ",".join(STRATA))
    return p


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    buf.write(f"# schema: {report.SCHEMA}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# --- single-class commands ----------------------------------------------------


def cmd_check(A: DivClass, args) -> tuple[int, str]:
    ok, witness = is_ample(A)
    if args.format == "json":
        body = {"ample": ok, "witness": witness.label if witness else None,
                "witness_class": report.class_str(witness.cls) if witness else None}
        return (EXIT_OK if ok else EXIT_NOT_AMPLE), _dump_json(report.envelope("check", A, **body))
    if ok:
        return EXIT_OK, "ample: all 240 pairings positive\n"
    return EXIT_NOT_AMPLE, f"not ample: {witness.label} pairs to {intersect(A, witness.cls)}\n"


def cmd_decompose(A: DivClass, args) -> tuple[int, str]:
    d = decompose(A)
    if args.format == "json":
        return EXIT_OK, _dump_json(report.envelope("decompose", A, decomposition=report.decomposition_dict(d)))
    return EXIT_OK, report.decomposition_text(d) + "\n"


def cmd_alpha(A: DivClass, args) -> tuple[int, str]:
    r = alpha_report(A, args.extended_oracle)
    code = EXIT_OK if r.agree else EXIT_DISAGREE
    if args.format == "json":
        body = {"decomposition": report.decomposition_dict(r.decomposition), "alpha": report.alpha_dict(r, args.normalization)}
        return code, _dump_json(report.envelope("alpha", A, **body))
    text = report.alpha_text(r)
    if args.normalization in ("A", "both"):
        text += f"\nalpha_c(A) = mu * alpha_c(muA) = {r.alpha_c_of_A}"
    return code, text + "\n"


def cmd_verdict(A: DivClass, args) -> tuple[int, str]:
    v = verdict(A, args.extended_oracle)
    code = EXIT_OK if v.alpha.agree else EXIT_DISAGREE
    if args.format == "json":
        body = {
            "decomposition": report.decomposition_dict(v.decomposition),
            "alpha": report.alpha_dict(v.alpha, args.normalization),
            "verdict": report.verdict_dict(v, args.normalization),
        }
        return code, _dump_json(report.envelope("verdict", A, **body))
    return code, report.verdict_text(v) + "\n"


# --- scan ----------------------------------------------------------------------


def scan_grid(ranges, steps) -> list[tuple]:
    axes = []
    for (lo, hi), n in zip(ranges, steps):
        axes.append([lo + i * (hi - lo) / n for i in range(n)])
    return list(product(*axes))


def _scan_point(job):
    base, dirs, coords, extended = job
    A = base
    for t, d in zip(coords, dirs):
        A = A + t * d
    try:
        require_ample(A)
    except NotAmple:
        return None
    return verdict(A, extended)


def _pool_map(fn, jobs, workers: int):
    if workers <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, jobs, chunksize=1))


def cmd_scan(base: DivClass, args) -> tuple[int, str]:
    if not args.scan_dir or len(args.scan_dir) > 2:
        raise UsageError("scan needs one or two --scan-dir")
    if not (len(args.scan_dir) == len(args.range) == len(args.steps)):
        raise UsageError("give one --range and one --steps per --scan-dir")
    dirs = [parse_class(s) for s in args.scan_dir]
    grid = scan_grid(args.range, args.steps)
    results = _pool_map(_scan_point, [(base, dirs, c, args.extended_oracle) for c in grid], args.jobs)
    disagree = any(v is not None and not v.alpha.agree for v in results)
    code = EXIT_DISAGREE if disagree else EXIT_OK
    if args.format == "json":
        rows = []
        for c, v in zip(grid, results):
            row = {"coords": [report.q(t) for t in c]}
            if v is None:
                row["verdict"] = "NotAmple"
            else:
                row.update(verdict=report.verdict_dict(v, args.normalization), alpha=report.alpha_dict(v.alpha, args.normalization),
                           decomposition=report.decomposition_dict(v.decomposition))
            rows.append(row)
        body = {"directions": [report.class_str(d) for d in dirs],
                "ranges": [[report.q(lo), report.q(hi)] for lo, hi in args.range], "steps": args.steps, "rows": rows}
        return code, _dump_json(report.envelope("scan", base, **body))
    header = report.csv_header(len(dirs), args.normalization)
    rows = [report.csv_row(c, v, args.normalization) for c, v in zip(grid, results)]
    return code, _csv_text(header, rows)


# --- oracle-compare -------------------------------------------------------------


def _compare_one(job):
    A, extended = job
    return compare(decompose(A), extended)


def cmd_oracle_compare(A: DivClass | None, args) -> tuple[int, str]:
    if A is not None:
        items = [("input", A)]
    else:
        strata = tuple(s.strip() for s in args.strata.split(",") if s.strip())
        unknown = set(strata) - set(STRATA)
        if unknown:
            raise UsageError(f"unknown strata: {', '.join(sorted(unknown))}")
        items = [(s.stratum, s.A) for s in stratified(args.seed, args.suite_size, strata)]
    reports = _pool_map(_compare_one, [(a, args.extended_oracle) for _, a in items], args.jobs)
    n_agree = sum(r.agree for r in reports)
    pct = Fraction(100 * n_agree, len(reports))
    code = EXIT_OK if n_agree == len(reports) else EXIT_DISAGREE
    if args.format == "json":
        rows = [{"stratum": s, "input_class": report.class_str(a), "tag": r.closed.tag,
                 "closed_form": report.q(r.closed_form), "oracle": report.q(r.oracle_value), "agree": r.agree}
                for (s, a), r in zip(items, reports)]
        body = {"agree_count": n_agree, "total": len(reports), "agree_percent": report.q(pct), "rows": rows}
        return code, _dump_json(report.envelope("oracle-compare", A or DivClass.zero(), **body))
    if args.format == "csv":
        header = ["stratum", "input_class", "tag", "closed_form", "oracle", "agree"]
        rows = [[s, report.class_str(a), r.closed.tag, report.q(r.closed_form), report.q(r.oracle_value), str(r.agree).lower()]
                for (s, a), r in zip(items, reports)]
        return code, _csv_text(header, rows)
    lines = []
    for (s, a), r in zip(items, reports):
        mark = "ok  " if r.agree else "DIFF"
        lines.append(f"{mark} {s:<16} {r.closed.tag:<16} closed {report.q(r.closed_form):>10}  oracle {report.q(r.oracle_value):>10}")
    pct_text = f"{int(pct)}" if pct.denominator == 1 else f"{float(pct):.1f}"
    lines.append(f"agree: {pct_text}% ({n_agree}/{len(reports)})")
    return code, "\n".join(lines) + "\n"


def cmd_selftest(args) -> tuple[int, str]:
    props = run_selftest()
    ok = all(p.passed for p in props)
    if args.format == "json":
        body = {"schema": report.SCHEMA, "command": "selftest", "passed": ok,
                "properties": [{"name": p.name, "passed": p.passed, "detail": p.detail} for p in props]}
        return (EXIT_OK if ok else EXIT_DISAGREE), _dump_json(body)
    return (EXIT_OK if ok else EXIT_DISAGREE), format_results(props) + "\n"


def run(args) -> tuple[int, str]:
    if args.command == "selftest":
        return cmd_selftest(args)
    A = parse_class(args.cls) if args.cls is not None else None
    if args.command == "oracle-compare":
        return cmd_oracle_compare(A, args)
    if A is None:
        raise UsageError(f"{args.command} needs --class")
    if args.format == "csv" and args.command != "scan":
        raise UsageError("csv output is only available for scan and oracle-compare")
    if args.command == "check":
        return cmd_check(A, args)
    if args.command == "scan":
        return cmd_scan(A, args)
    require_ample(A)
    return {"decompose": cmd_decompose, "alpha": cmd_alpha, "verdict": cmd_verdict}[args.command](A, args)


_VALUE_OPTIONS = ("--class", "--scan-dir", "--range")


def _glue_values(argv: list[str]) -> list[str]:
    """Turn ``--class -K`` into ``--class=-K`` so argparse keeps leading minus signs."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_glue_values(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        code, text = run(args)
    except (ParseError, UsageError) as exc:
        print(f"dp1kstab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotAmple as exc:
        print(f"dp1kstab: not ample: {exc}", file=sys.stderr)
        return EXIT_NOT_AMPLE
    except DelPezzoError as exc:
        print(f"dp1kstab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
