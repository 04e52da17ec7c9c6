"""Command-line front end: ``hgci {ci,table,audit,bench}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from hgci.bench import DEFAULT_NS, records_to_csv, run_bench, sample_size
from hgci.dist import Design
from hgci.errors import ConstructionError, OracleBoundError
from hgci.procedures import METHODS, ProcedureTable, audit, build_table

EXIT_OK, EXIT_USAGE, EXIT_CONSTRUCTION, EXIT_ORACLE_BOUND = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _num(v) -> str:
    return f"{v:.15g}" if isinstance(v, float) else str(v)


def _design(args) -> Design:
    if args.N is None or args.n is None:
        raise UsageError("--N and --n are required")
    try:
        return Design(args.N, args.n, args.alpha)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _design_record(t: ProcedureTable) -> dict:
    d = t.design
    return {"method": t.method, "N": d.N, "n": d.n, "alpha": d.alpha}


def cmd_ci(args, out) -> None:
    d = _design(args)
    if args.x is None or not 0 <= args.x <= d.n:
        raise UsageError(f"--x must lie in 0..{d.n}")
    t = build_table(args.method, d)
    s = t.sets[args.x]
    if args.format == "json-lines":
        rec = {**_design_record(t), "x": s.x, "lo": s.lo, "hi": s.hi}
        if args.members:
            rec["members"] = list(s.members)
        out.write(json.dumps(rec) + "\n")
        return
    out.write(f"{s.lo} {s.hi}\n")
    if args.members:
        out.write(" ".join(map(str, s.members)) + "\n")


def cmd_table(args, out) -> None:
    t = build_table(args.method, _design(args))
    if args.format == "json-lines":
        base = _design_record(t)
        for s in t.sets:
            rec = {**base, "x": s.x, "lo": s.lo, "hi": s.hi, "gap": not s.is_interval}
            out.write(json.dumps(rec) + "\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "lo", "hi", "gap_flag"])
    for s in t.sets:
        writer.writerow([s.x, s.lo, s.hi, str(not s.is_interval).lower()])
    out.write(buf.getvalue())


def cmd_audit(args, out) -> None:
    d = _design(args)
    t = build_table(args.method, d)
    rec = {**_design_record(t), **vars(audit(t))}
    if args.oracle:
        from hgci.oracle import compare_to_oracle, exhaustive_optimal_symmetric

        oracle = exhaustive_optimal_symmetric(d)
        cmp = compare_to_oracle(t, d, oracle)
        rec.update(oracle_total_size=oracle.total_size, oracle_max_excess=cmp.max_excess)
    if args.format == "json-lines":
        out.write(json.dumps(rec) + "\n")
        return
    for key, value in rec.items():
        out.write(f"{key}: {_num(value)}\n")
    out.write(f"asymmetry: {100 * rec['asymmetry_proportion']:.1f}%\n")


def cmd_bench(args, out) -> None:
    Ns = args.N_list or list(DEFAULT_NS)
    if args.n_list:
        if len(args.n_list) not in (1, len(Ns)):
            raise UsageError("--n must give one value or one per --N")
        ns = args.n_list * len(Ns) if len(args.n_list) == 1 else args.n_list
    else:
        ns = [sample_size(N, args.n_rule) for N in Ns]
    if args.repeats < 1:
        raise UsageError("--repeats must be >= 1")
    methods = [m for spec in args.method for m in spec.split(",") if m]
    for m in methods:
        if m not in METHODS:
            raise UsageError(f"unknown method {m!r}")
    try:
        designs = [Design(N, n, args.alpha) for N, n in zip(Ns, ns)]
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    records = run_bench(methods, designs, args.repeats, args.allow_long_runs, args.parallel_cells)
    text = records_to_csv(records)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hgci",
        description="Confidence sets for the hypergeometric success count M.",
        allow_abbrev=False,
    )
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--seedless", action="store_true",
                        help="accepted for compatibility; nothing here is random")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, method_default="symmetric_opt"):
        p.add_argument("--method", choices=METHODS, default=method_default)
        p.add_argument("--N", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--alpha", type=float, default=0.05)

    p = sub.add_parser("ci", parents=[shared], help="interval for one observed count", allow_abbrev=False)
    common(p)
    p.add_argument("--x", type=int)
    p.add_argument("--members", action="store_true", help="also print every member")
    p.add_argument("--format", choices=("text", "json-lines"), default="text")
    p.set_defaults(func=cmd_ci)

    p = sub.add_parser("table", parents=[shared], help="the full table, one row per x", allow_abbrev=False)
    common(p)
    p.add_argument("--format", choices=("csv", "json-lines"), default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("audit", parents=[shared], help="coverage, size and asymmetry of a table", allow_abbrev=False)
    common(p)
    p.add_argument("--format", choices=("text", "json-lines"), default="text")
    p.add_argument("--oracle", action="store_true",
                   help="compare with the exhaustive optimum (N <= 12 only)")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("bench", parents=[shared], help="time table construction over a grid", allow_abbrev=False)
    p.add_argument("--method", action="append", default=None,
                   help="method name(s), repeatable or comma separated")
    p.add_argument("--N", dest="N_list", type=int, nargs="+")
    p.add_argument("--n", dest="n_list", type=int, nargs="+")
    p.add_argument("--n-rule", choices=("half", "quarter"), default="half")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--allow-long-runs", action="store_true")
    p.add_argument("--parallel-cells", action="store_true")
    p.add_argument("--format", choices=("csv",), default="csv")
    p.add_argument("--output", help="write the CSV here instead of stdout")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=err)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "bench" and args.method is None:
        args.method = ["lco_style,symmetric_opt"]
    try:
        args.func(args, out)
    except UsageError as exc:
        err.write(f"hgci {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except ConstructionError as exc:
        err.write(f"hgci {args.command}: construction failed: {exc}\n")
        return EXIT_CONSTRUCTION
    except OracleBoundError as exc:
        err.write(f"hgci {args.command}: {exc}\n")
        return EXIT_ORACLE_BOUND
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
