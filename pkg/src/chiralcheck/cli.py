"""Command line interface: ``chiralcheck {check,scan,explain,oracle}``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .errors import ChiralCheckError, OracleBoundExceeded
from .forms import (
    DEFAULT_ORACLE_BOUND,
    CyclicLinkingForm,
    cyclic_parameter,
    find_self_negation_isometry,
    linking_form_from_seifert,
    restrict_to_primary,
)
from .groups import primary_part
from .knotio import emit_report, emit_reports, load_table, parse_alexander, parse_seifert_text, scan_table
from .numtheory import is_prime
from .obstruction import full_report


def _read_seifert(arg: str) -> str:
    path = Path(arg)
    try:
        if path.is_file():
            return path.read_text()
    except OSError:
        pass
    return arg.replace(";", "\n")


def cmd_check(args) -> int:
    M = parse_seifert_text(_read_seifert(args.seifert))
    alex = parse_alexander(args.alexander) if args.alexander else None
    report = full_report(args.label, M, alex, oracle_bound=args.bound)
    print(emit_report(report, args.format))
    return 0


def cmd_scan(args) -> int:
    table = load_table(args.table, strict=args.strict)
    reports = scan_table(table, jobs=args.jobs, oracle_bound=args.bound)
    print(emit_reports(reports, args.format))
    return 0


def cmd_explain(args) -> int:
    table = load_table(args.table, strict=args.strict)
    try:
        record = table.get(args.label)
    except KeyError:
        print(f"no knot labelled {args.label!r} in {args.table}", file=sys.stderr)
        return 2
    report = record.report(args.bound)
    print(emit_report(report, "text"))
    print()
    print("Seifert matrix A:")
    for row in record.matrix.rows():
        print("  " + " ".join(f"{x:>4}" for x in row))
    if record.amphichiral_flag is not None:
        print(f"table flag amphichiral = {str(record.amphichiral_flag).lower()}")
        if record.amphichiral_flag and report.obstructed:
            print("WARNING: table marks this knot amphichiral but an obstruction fired")
    form = linking_form_from_seifert(record.matrix)
    for ev in report.per_prime:
        part = primary_part(form.group, ev.prime)
        if not part.is_cyclic:
            print(f"p = {ev.prime}: primary part not cyclic, no isometry search")
            continue
        cyc = cyclic_parameter(restrict_to_primary(form, ev.prime))
        print(f"p = {ev.prime}: restricted form lambda(x, x) = {cyc.k}/{cyc.modulus} on Z/{cyc.modulus}")
        try:
            r = find_self_negation_isometry(cyc, args.bound)
        except OracleBoundExceeded as e:
            print(f"  oracle skipped: {e}")
            continue
        if r is None:
            print(f"  no unit r mod {cyc.modulus} satisfies -k = k r^2; lambda_p and -lambda_p are not isometric")
        else:
            print(f"  r = {r} satisfies -k = k r^2 mod {cyc.modulus}; lambda_p is isometric to -lambda_p")
    return 0


def cmd_oracle(args) -> int:
    p, n = args.prime, args.exponent
    if not is_prime(p) or p == 2 or n < 1:
        print("--prime must be an odd prime and --exponent >= 1", file=sys.stderr)
        return 2
    q = p**n
    if q > args.bound:
        raise OracleBoundExceeded(f"oracle bound exceeded: {p}^{n} = {q} > {args.bound}")
    ks = [args.k] if args.k is not None else [k for k in range(1, q) if k % p]
    criterion = p % 4 == 1
    mismatches = 0
    found = 0
    for k in ks:
        r = find_self_negation_isometry(CyclicLinkingForm(p, n, k), args.bound)
        found += r is not None
        if (r is not None) != criterion:
            mismatches += 1
        if args.k is not None or args.verbose:
            witness = f"r = {r}" if r is not None else "none"
            print(f"k = {k}: isometry lambda ~ -lambda on Z/{q}: {witness}")
    print(f"Z/{q}: {found} of {len(ks)} unit(s) k admit lambda ~ -lambda; "
          f"p = {p % 4} mod 4 predicts {'all' if criterion else 'none'}; mismatches: {mismatches}")
    return 1 if mismatches else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chiralcheck",
        description="Chirality obstructions from the double branched cover of a knot.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def bound_opt(p):
        p.add_argument("--bound", type=int, default=DEFAULT_ORACLE_BOUND,
                       help="largest p^n the brute-force oracle will enumerate")

    p = sub.add_parser("check", help="check a single Seifert matrix")
    p.add_argument("--seifert", required=True,
                   help="file with the matrix, or inline text ('[[1,0],[1,-2]]' or '1 0; 1 -2')")
    p.add_argument("--alexander", help="Alexander polynomial coefficients, ascending, e.g. '2,-5,2'")
    p.add_argument("--label", default="K")
    p.add_argument("--format", choices=("json", "text"), default="text")
    bound_opt(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("scan", help="check every knot in a CSV table")
    p.add_argument("--table", required=True, help="CSV path, or builtin:knots / builtin:amphichiral")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--strict", action="store_true", help="abort on the first malformed row")
    p.add_argument("--jobs", type=int, default=1)
    bound_opt(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("explain", help="verbose evidence for one knot of a table")
    p.add_argument("label")
    p.add_argument("--table", required=True)
    p.add_argument("--strict", action="store_true")
    bound_opt(p)
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("oracle", help="run the brute-force isometry search on Z/p^n")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--exponent", type=int, default=1)
    p.add_argument("--k", type=int, help="a single unit k (default: all units)")
    bound_opt(p)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except ChiralCheckError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
