"""Command-line entry point.

Exit codes: 0 everything passed, 1 a verification failed, 2 usage or parse
error, 3 evaluation error.  Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import shlex
import sys
from typing import Optional

from . import __version__
from .errors import QSeriesError
from .identities import (
    ERROR,
    PASS,
    IdentityId,
    IdentityReport,
    aftall,
    alladi,
    qbinomial,
    thm12_difference,
    verify,
    verify_all,
    verify_thm12,
)
from .overpartitions import count
from .qexpr import EvalError, ExprSyntaxError, evaluate, parse_monomial
from .series import format_power, format_series

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EVAL = 0, 1, 2, 3
DEFAULT_ORDER = 50

PLAIN_IDS = ("thm11", "thm12", "thm13", "a_direct_vs_closed", "diff3_chain",
             "diff4", "diff4_split", "diff4_reindex")
PARAM_IDS = {"alladi": ("a", "b", "n"), "aftall": ("n",), "qbinomial": ("a", "z")}
CSV_HEADER = ["id", "params", "order", "status", "mismatch_exp", "lhs", "rhs"]


class UsageError(Exception):
    pass


def report_record(r: IdentityReport) -> dict:
    rec = {"id": r.id.name, "params": r.id.params_dict(), "order": r.order_q, "status": r.status}
    if r.mismatch is not None:
        rec["mismatch"] = {"exp": r.mismatch.exponent, "lhs": str(r.mismatch.lhs),
                           "rhs": str(r.mismatch.rhs)}
    return rec


def overall(statuses) -> str:
    statuses = list(statuses)
    if all(s == PASS for s in statuses):
        return PASS
    return ERROR if ERROR in statuses else "fail"


def canonical_body(doc: dict) -> dict:
    """The document without its timing field, for byte-level comparisons."""
    return {k: v for k, v in doc.items() if k != "timing"}


def _params_text(params: dict) -> str:
    return ";".join(f"{k}={v}" for k, v in params.items())


def render_reports(reports: list[IdentityReport], fmt: str, command: list[str],
                   timing: bool = False) -> str:
    if fmt == "json":
        doc = {
            "version": __version__,
            "command": shlex.join(command),
            "reports": [report_record(r) for r in reports],
            "status": overall(r.status for r in reports),
        }
        if timing:
            doc["timing"] = {str(r.id): round(r.elapsed, 6) for r in reports}
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in reports:
            rec = report_record(r)
            mm = rec.get("mismatch", {})
            w.writerow([rec["id"], _params_text(rec["params"]), rec["order"], rec["status"],
                        mm.get("exp", ""), mm.get("lhs", ""), mm.get("rhs", "")])
        return buf.getvalue()
    lines = []
    for r in reports:
        line = f"{r.status.upper():5} {r.id}  order={r.order_q}"
        if timing:
            line += f"  ({r.elapsed:.3f}s)"
        if r.mismatch is not None:
            at = format_power(r.mismatch.exponent) or "q^0"
            line += f"  mismatch at {at}: lhs={r.mismatch.lhs} rhs={r.mismatch.rhs}"
        lines.append(line)
    passed = sum(r.passed for r in reports)
    lines.append(f"{passed}/{len(reports)} passed")
    return "\n".join(lines) + "\n"


def _identity_from_args(args) -> IdentityId:
    name = args.id
    if name in PLAIN_IDS:
        return IdentityId(name)
    if name not in PARAM_IDS:
        raise UsageError(f"unknown identity {name!r}; choose from "
                         + ", ".join([*PLAIN_IDS, *PARAM_IDS]))
    values = {}
    for key in PARAM_IDS[name]:
        raw = getattr(args, key)
        if raw is None:
            raise UsageError(f"{name} needs --{key}")
        if key == "n":
            values[key] = int(raw)
        else:
            try:
                values[key] = parse_monomial(raw)
            except ExprSyntaxError as exc:
                raise UsageError(f"--{key}: {exc}") from None
    try:
        if name == "alladi":
            return alladi(values["a"], values["b"], values["n"])
        if name == "aftall":
            return aftall(values["n"])
        return qbinomial(values["a"], values["z"])
    except QSeriesError as exc:
        raise UsageError(str(exc)) from None


def _exit_for(reports) -> int:
    status = overall(r.status for r in reports)
    for r in reports:
        if r.status == ERROR:
            print(f"error: {r.id}: {r.detail}", file=sys.stderr)
    return {PASS: EXIT_OK, ERROR: EXIT_EVAL}.get(status, EXIT_FAIL)


def cmd_verify(args, argv) -> int:
    ident = _identity_from_args(args)
    report = verify(ident, args.order)
    if report.detail and report.status != ERROR:
        print(report.detail, file=sys.stderr)
    sys.stdout.write(render_reports([report], args.format, argv, args.timing))
    return _exit_for([report])


def cmd_verify_all(args, argv) -> int:
    reports = verify_all(args.order)
    sys.stdout.write(render_reports(reports, args.format, argv, args.timing))
    return _exit_for(reports)


def cmd_congruence(args, argv) -> int:
    report = verify_thm12(args.order)
    if args.format == "text":
        diff = thm12_difference(min(args.order, 8))
        head = format_series(diff)
        verdict = "divisible by 4" if report.passed else f"violated: {report.detail}"
        sys.stdout.write(
            f"{report.status.upper()} thm12 order={args.order}\n"
            f"lhs - 1/2 (q;q^2)_inf/(-q;q^2)_inf = {head} + ...\n"
            f"coefficients through q^{args.order}: {verdict}\n")
    else:
        sys.stdout.write(render_reports([report], args.format, argv, args.timing))
    return _exit_for([report])


def cmd_table(args, argv) -> int:
    if args.kind != "pbar-omega":
        raise UsageError(f"unknown table {args.kind!r}; only 'pbar-omega' is available")
    if args.max_n < 1:
        raise UsageError("--max-n must be at least 1")
    rows = [{"n": n, "count": count(n)} for n in range(1, args.max_n + 1)]
    ok = True
    if args.crosscheck:
        from .identities import THM11, build_side

        rhs = build_side(THM11, "rhs", args.max_n)
        for row in rows:
            c = rhs.coeff_q(row["n"])
            row["rhs"] = str(c)
            row["match"] = c == row["count"]
            ok = ok and row["match"]
        ok = ok and rhs.coeff(0) == 0 and rhs.is_real() and rhs.is_even()
    status = PASS if ok else "fail"
    if args.format == "json":
        doc = {"version": __version__, "command": shlex.join(argv), "rows": rows,
               "status": status}
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        for row in rows:
            line = f"{row['n']:>4} {row['count']:>12}"
            if args.crosscheck:
                line += f"  rhs={row['rhs']}  {'ok' if row['match'] else 'MISMATCH'}"
            print(line)
        if args.crosscheck:
            print(status.upper())
    return EXIT_OK if ok else EXIT_FAIL


def cmd_expand(args, argv) -> int:
    series = evaluate(args.expr, args.order)
    print(format_series(series))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qseries", description="Exact q-series identity workbench.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=True):
        sp.add_argument("--order", type=int, default=DEFAULT_ORDER,
                        help="verify through q^ORDER (default %(default)s)")
        if fmt:
            sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
            sp.add_argument("--timing", action="store_true",
                            help="add elapsed times (kept out of the canonical JSON body)")

    v = sub.add_parser("verify", help="verify one identity")
    v.add_argument("id")
    v.add_argument("--n", type=int)
    v.add_argument("--a", help="monomial in qexpr syntax, e.g. -1 or i*q2")
    v.add_argument("--b", help="monomial in qexpr syntax")
    v.add_argument("--z", help="monomial in qexpr syntax (qbinomial)")
    common(v)
    v.set_defaults(func=cmd_verify)

    va = sub.add_parser("verify-all", help="verify the whole registry")
    common(va)
    va.set_defaults(func=cmd_verify_all)

    c = sub.add_parser("congruence", help="mod-4 congruence report")
    common(c)
    c.set_defaults(func=cmd_congruence)

    t = sub.add_parser("table", help="tabulate pbar_omega(n)")
    t.add_argument("kind")
    t.add_argument("--max-n", type=int, default=20)
    t.add_argument("--crosscheck", action="store_true")
    t.add_argument("--format", choices=("text", "json", "csv"), default="text")
    t.set_defaults(func=cmd_table)

    e = sub.add_parser("expand", help="expand a qexpr expression")
    e.add_argument("expr")
    common(e, fmt=False)
    e.set_defaults(func=cmd_expand)
    return p


def run(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "order", 0) < 0:
        print("error: --order must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, argv)
    except (UsageError, ExprSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EvalError, QSeriesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
