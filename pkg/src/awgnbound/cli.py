"""Command-line front end.

    awgnbound bounds 0 --units bits
    awgnbound sweep --p-db-min -10 --p-db-max 15 --p-db-step 0.5 --out fig2.csv
    awgnbound verify
    awgnbound gap-report --ebn0-max-db 2.5 --oracle-tol 1e-7

Exit codes: 0 success, 1 property failure, 2 bad arguments, 3 I/O failure,
4 oracle non-convergence.
"""
from __future__ import annotations

import argparse
import math
import sys

from . import bounds, verify
from .sweep import gap_report, sweep, to_units, write_csv

EXIT_OK, EXIT_PROPERTY, EXIT_USAGE, EXIT_IO, EXIT_ORACLE = 0, 1, 2, 3, 4

GAP_CLAIM_BITS = 0.002
GAP_SLACK_BITS = 0.0005


def finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return value


def positive_float(text: str) -> float:
    value = finite_float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be > 0: {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="awgnbound", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    units = argparse.ArgumentParser(add_help=False)
    units.add_argument("--units", choices=["nats", "bits"], default="nats")
    axis = argparse.ArgumentParser(add_help=False)
    axis.add_argument("--ebn0-unit", choices=["bits", "nats"], default="bits",
                      help="information unit Eb is counted per (default: bits)")

    p = sub.add_parser("bounds", parents=[units], help="all bounds at one peak power")
    p.add_argument("p_db_pos", nargs="?", type=finite_float, metavar="P_DB")
    p.add_argument("--p-db", type=finite_float, help="peak power P = A^2 in dB")

    p = sub.add_parser("sweep", parents=[units, axis], help="bound table over a dB grid (CSV)")
    p.add_argument("--p-db-min", type=finite_float, default=-10.0)
    p.add_argument("--p-db-max", type=finite_float, default=15.0)
    p.add_argument("--p-db-step", type=positive_float, default=0.5)
    p.add_argument("--with-oracle", action="store_true")
    p.add_argument("--oracle-tol", type=positive_float, default=1e-7)
    p.add_argument("--out", default="-", help="output path, '-' for stdout")

    sub.add_parser("verify", help="run the property suites")

    p = sub.add_parser("gap-report", parents=[axis], help="bound-to-capacity gap at low Eb/N0")
    p.add_argument("--ebn0-max-db", type=finite_float, default=2.5)
    p.add_argument("--oracle-tol", type=positive_float, default=1e-7)
    p.add_argument("--p-db-min", type=finite_float, default=-20.0)
    p.add_argument("--p-db-max", type=finite_float, default=8.0)
    p.add_argument("--p-db-step", type=positive_float, default=0.25)
    p.add_argument("--bound", choices=["theorem", "thangaraj"], default="theorem")
    return parser


def cmd_bounds(args, out) -> int:
    p_db = args.p_db if args.p_db is not None else args.p_db_pos
    if p_db is None:
        raise _UsageError("bounds needs a power in dB (positional or --p-db)")
    bp = bounds.theorem_bound(10.0 ** (p_db / 10.0))
    u = args.units
    print(f"P = {bp.p:.12g} ({p_db:g} dB), A = {math.sqrt(bp.p):.12g}, regime {bp.regime.value}", file=out)
    for name in ("shannon", "mckellips", "thangaraj", "theorem", "combined", "w"):
        print(f"  {name + '_' + u:<16} {to_units(getattr(bp, name + '_nats'), u):.12g}", file=out)
    print(f"  {'sigma2':<16} {bp.sigma2:.12g}", file=out)
    print(f"  {'beta':<16} {bp.beta:.12g}", file=out)
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    if not args.p_db_min < args.p_db_max:
        raise _UsageError("--p-db-min must be below --p-db-max")
    rows = sweep(args.p_db_min, args.p_db_max, args.p_db_step, with_oracle=args.with_oracle,
                 oracle_tol=args.oracle_tol, ebn0_unit=args.ebn0_unit)
    try:
        if args.out == "-":
            write_csv(rows, out, args.units)
        else:
            with open(args.out, "w", newline="") as fh:
                write_csv(rows, fh, args.units)
    except OSError as exc:
        print(f"awgnbound: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    if any(r.flagged for r in rows):
        print("awgnbound: oracle did not converge on some rows (flagged)", file=sys.stderr)
        return EXIT_ORACLE
    return EXIT_OK


def cmd_verify(args, out) -> int:
    ok = True
    for suite in verify.SUITES:
        res = suite()
        ok &= res.passed
        print(res.line(), file=out, flush=True)
    print("all suites passed" if ok else "PROPERTY FAILURE", file=out)
    return EXIT_OK if ok else EXIT_PROPERTY


def cmd_gap_report(args, out) -> int:
    rep = gap_report(args.ebn0_max_db, args.oracle_tol, args.p_db_min, args.p_db_max,
                     args.p_db_step, ebn0_unit=args.ebn0_unit, bound=args.bound)
    print(f"bound: {rep.bound} (combined with Shannon); Eb counted per {args.ebn0_unit[:-1]}, N0 = 2",
          file=out)
    print(f"points with Eb/N0 <= {rep.ebn0_max_db:g} dB: {rep.n_included}", file=out)
    print(f"max gap: {rep.max_gap_bits:.6f} bits at P = {rep.argmax_p:.6g} "
          f"({rep.argmax_p_db:.2f} dB)", file=out)
    if rep.max_gap_bits > GAP_CLAIM_BITS + GAP_SLACK_BITS:
        print(f"NOTE: gap exceeds {GAP_CLAIM_BITS + GAP_SLACK_BITS:g} bits; the Eb/N0 axis "
              "convention is the suspect (try --ebn0-unit nats)", file=out)
    if not rep.all_converged:
        print("awgnbound: oracle did not converge on an included point", file=sys.stderr)
        return EXIT_ORACLE
    return EXIT_OK


class _UsageError(Exception):
    pass


COMMANDS = {
    "bounds": cmd_bounds,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "gap-report": cmd_gap_report,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (_UsageError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"awgnbound: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
