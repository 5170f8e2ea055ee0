"""Command-line front end.

Exit codes: 0 ok, 2 usage, 3 resource bound exceeded, 4 internal invariant
violation.  JSON goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import KP_FORMS, conjecture_check, kp_form, kp_report
from .errors import CoverCountError, InternalError, ResourceError, UsageError
from .exactalg import RatPolyM, rat_to_str, render_factored
from .genseries import b_number, bms_number, build_S, default_threads
from .oracle import DEFAULT_BUDGET, enumerate_counts
from .partitions import Partition, partitions_of

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_INTERNAL = 0, 2, 3, 4


def _partition_arg(text: str) -> Partition:
    try:
        nu = Partition.parse(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if not nu:
        raise argparse.ArgumentTypeError("the partition must be nonempty")
    return nu


def _nat(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {value}")
    return value


def _positive(text: str) -> int:
    value = _nat(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def dense(poly: RatPolyM) -> str:
    return "[" + ", ".join(poly.to_strings() or ["0"]) + "]"


def format_table(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    lines = []
    for r in [header] + rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    return "\n".join(lines)


def _emit(args, table_text: str, payload) -> None:
    if args.output == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(table_text)


# -- commands ---------------------------------------------------------------------


def cmd_count(args) -> int:
    nu = args.nu
    gf = build_S(nu.size, args.genus, threads=args.threads)
    poly = b_number(gf, args.genus, nu)
    payload = {"genus": args.genus, "nu": list(nu), "m": args.m}
    if args.m is None:
        payload["m_poly"] = poly.to_strings()
        text = dense(poly)
    else:
        value = poly(args.m)
        payload["value"] = rat_to_str(value)
        text = rat_to_str(value)
    _emit(args, text, payload)
    return EXIT_OK


def cmd_series(args) -> int:
    gf = build_S(args.max_weight, args.genus, threads=args.threads)
    if args.m is not None:
        gf = gf.specialize(args.m)
    rows = [[str(mu), render_factored(c)] for g, mu, c in gf.terms() if g == args.genus]
    m_label = "symbolic" if args.m is None else str(args.m)
    text = f"genus {args.genus}, weight <= {args.max_weight}, m = {m_label}\n"
    text += format_table(["mu", f"b_{{{args.genus},mu,m}}"], rows)
    _emit(args, text, gf.to_json(genus=args.genus))
    return EXIT_OK


def cmd_bms(args) -> int:
    poly = bms_number(args.nu)
    payload = {"nu": list(args.nu), "m": args.m, "m_poly": poly.to_strings()}
    if args.m is None:
        text = render_factored(poly)
    else:
        payload["value"] = rat_to_str(poly(args.m))
        text = payload["value"]
    _emit(args, text, payload)
    return EXIT_OK


def cmd_oracle(args) -> int:
    table = enumerate_counts(args.n, args.m, budget=args.budget, threads=args.threads)
    rows = [[str(nu), str(g), rat_to_str(c)] for nu, g, c in table.sorted_cells()]
    _emit(args, format_table(["nu", "genus", "count"], rows), table.to_json())
    return EXIT_OK


def cmd_kp(args) -> int:
    if args.max_weight < 4:
        raise UsageError("kp needs --max-weight >= 4")
    gf = build_S(args.max_weight, args.genus_cap, threads=args.threads)
    forms = [kp_form(f) for f in args.form] if args.form else list(KP_FORMS)
    report = kp_report(gf, forms)
    rows = []
    for r in report:
        first = r["first_nonzero_term"]
        if first is None:
            where = "-"
        else:
            poly = RatPolyM.from_strings(first["m_poly"])
            where = f"p[{Partition(first['mu'])}] hbar^{first['hbar']}: {render_factored(poly)}"
        rows.append([r["form"], str(r["vanishes_through_weight"]), where])
    _emit(args, format_table(["form", "vanishes_through_weight", "first_nonzero_term"], rows), report)
    return EXIT_OK


def cmd_conjecture(args) -> int:
    gf = build_S(args.max_n, 1, threads=args.threads)
    reports = [conjecture_check(gf, nu) for n in range(1, args.max_n + 1) for nu in partitions_of(n)]
    rows = [
        [
            str(r.nu),
            "yes" if r.divisible else "no",
            "-" if r.quotient is None else render_factored(r.quotient),
            "ok" if r.degree_bound_ok else "FAIL",
        ]
        for r in reports
    ]
    text = format_table(["nu", "divisible", "quotient", "degree<=2l-1"], rows)
    _emit(args, text, [r.to_json() for r in reports])
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=["table", "json"], default="table")
    common.add_argument("--threads", type=_positive, default=None, help="worker processes (env COVERCOUNT_THREADS)")
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="brute-force step budget")

    parser = argparse.ArgumentParser(
        prog="covercount",
        description="Exact counts of coverings of the sphere with one fixed ramification type.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="b_{g,nu,m} for one genus and cycle type")
    p.add_argument("--genus", type=_nat, required=True)
    p.add_argument("--nu", type=_partition_arg, required=True)
    p.add_argument("--m", type=_nat, default=None)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("series", parents=[common], help="one genus slice of the generating function")
    p.add_argument("--genus", type=_nat, required=True)
    p.add_argument("--max-weight", type=_nat, required=True)
    p.add_argument("--m", type=_nat, default=None)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("bms", parents=[common], help="genus-0 closed form for a fixed permutation")
    p.add_argument("--nu", type=_partition_arg, required=True)
    p.add_argument("--m", type=_nat, default=None)
    p.set_defaults(func=cmd_bms)

    p = sub.add_parser("oracle", parents=[common], help="brute-force constellation counts")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--m", type=_nat, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("kp", parents=[common], help="KP residual report")
    p.add_argument("--max-weight", type=_nat, required=True)
    p.add_argument("--genus-cap", type=_nat, required=True)
    p.add_argument("--form", action="append", choices=[f.identifier for f in KP_FORMS])
    p.set_defaults(func=cmd_kp)

    p = sub.add_parser("conjecture", parents=[common], help="genus-1 divisibility test")
    p.add_argument("--max-n", type=_positive, required=True)
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.threads is None:
            args.threads = default_threads()
        return args.func(args)
    except UsageError as exc:
        print(f"covercount: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"covercount: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InternalError as exc:
        print(f"covercount: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except CoverCountError as exc:
        print(f"covercount: error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
