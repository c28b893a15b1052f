"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 precondition violation, 3 I/O failure.
"""

import argparse
import csv
import json
import logging
import sys
from fractions import Fraction

from . import density, graphs, selftest, wreath
from .dynatomic import DynatomicSpec, NotSquarefree, TheoremViolation, dynatomic_int, dynatomic_mod, exceptional_primes
from .polynomials import DegreeCapExceeded, format_poly

EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_IO = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(obj, as_json, text):
    print(json.dumps(obj, sort_keys=True) if as_json else text)


def _num(x):
    return str(x) if isinstance(x, Fraction) else repr(x)


def cmd_dynatomic(args):
    spec = DynatomicSpec(args.k, args.m, args.n)
    if args.mod is not None:
        phi = dynatomic_mod(spec, args.mod)
    else:
        phi = dynatomic_int(spec.map(), args.n)
    _emit({"k": args.k, "m": args.m, "n": args.n, "mod": args.mod, "coeffs": list(phi.coeffs)},
          args.json, format_poly(phi))


def cmd_graph(args):
    g = graphs.build_graph(DynatomicSpec(args.k, args.m, 1).map(), args.p, args.graph_threshold)
    out = {}
    lines = []
    show_all = not (args.spectrum or args.code or args.period)
    if args.spectrum or show_all:
        spec = graphs.cycle_spectrum(g)
        out["spectrum"] = [list(pair) for pair in spec]
        lines.append(graphs.format_spectrum(spec))
    if args.period:
        pts = graphs.points_of_period(g, args.period)
        out["period_points"] = pts
        lines.append(",".join(map(str, pts)))
    if args.code or show_all:
        code = graphs.canonical_code(g).hex()
        out["code"] = code
        lines.append(code)
    _emit(out, args.json, "\n".join(lines))


def cmd_wreath(args):
    action = args.action
    if action == "pn":
        params = wreath.WreathParams(args.n, args.r)
        if args.brute:
            val = wreath.p_rn_brute(params)
        elif args.float:
            val = wreath.p_rn_float(args.r, args.n)
        else:
            val = wreath.p_rn_exact(params)
        _emit({"r": args.r, "n": args.n, "P": _num(val)}, args.json, _num(val))
    elif action == "pk":
        val = wreath.p_k(args.n, args.k)
        _emit({"n": args.n, "k": args.k, "P": _num(val)}, args.json, _num(val))
    elif action == "bound":
        lhs, rhs, ok = wreath.check_theorem_bound(wreath.WreathParams(args.n, args.r))
        _emit({"lhs": lhs, "rhs": rhs, "ok": ok}, args.json, f"{lhs!r} < {rhs!r}: {ok}")
    elif action == "pnbound":
        ok = wreath.check_pn_bound(args.n, args.k)
        gap = wreath.pn_bound_gap(args.n, args.k)
        _emit({"gap": gap, "bound": 121 / args.n**2, "ok": ok}, args.json, f"{gap!r} < {121 / args.n**2!r}: {ok}")
    elif action == "table":
        rows = wreath.wreath_table(args.k, args.n_max)
        if args.json:
            print(json.dumps(rows, sort_keys=True))
        else:
            writer = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
    elif action == "s":
        spec = wreath.ProgressionSpec(args.start, args.step, args.k, args.length)
        seq = [_num(v) for v in wreath.s_sequence(spec)]
        _emit(seq, args.json, "\n".join(seq))


def cmd_exceptional(args):
    spec = DynatomicSpec(args.k, args.m, args.n)
    primes = exceptional_primes(spec, args.X, args.graph_threshold, args.seed)
    _emit(primes, args.json, " ".join(map(str, primes)))


def cmd_sweep(args):
    config = density.ExperimentConfig(
        k=args.k, ms=tuple(args.m), ns=tuple(args.n), limit=args.X,
        graph_threshold=args.graph_threshold, seed=args.seed, output=args.out,
        resume=args.resume, workers=args.workers,
    )
    report = density.sweep(config)
    _print_report(report, args.csv)


def cmd_report(args):
    _print_report(density.report_from_file(args.records), args.csv)


def _print_report(report, as_csv):
    print(report.to_csv() if as_csv else report.to_json(), end="" if as_csv else "\n")


def cmd_selftest(args):
    failures = selftest.run()
    return 1 if failures else 0


def build_parser():
    parser = _Parser(prog="dynadist", description="Dynamics of x^k + m over prime fields.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit JSON")

    p = sub.add_parser("dynatomic", help="print the n-th dynatomic polynomial of x^k + m")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mod", type=int, help="reduce modulo this prime")
    common(p)
    p.set_defaults(func=cmd_dynatomic)

    p = sub.add_parser("graph", help="functional graph of x^k + m on F_p")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--spectrum", action="store_true", help="cycle lengths as length:count")
    p.add_argument("--code", action="store_true", help="canonical code as hex")
    p.add_argument("--period", type=int, help="list the points of this exact period")
    p.add_argument("--graph-threshold", type=int, default=graphs.GRAPH_THRESHOLD)
    common(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("wreath", help="fixed-point statistics of Z/nZ wr S_r")
    p.add_argument("action", choices=["pn", "pk", "bound", "pnbound", "table", "s"])
    p.add_argument("--r", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--start", type=int, default=1)
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--length", type=int, default=10)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact fraction (default)")
    mode.add_argument("--float", action="store_true", help="floating-point evaluation")
    mode.add_argument("--brute", action="store_true", help="enumerate the group")
    common(p)
    p.set_defaults(func=cmd_wreath)

    p = sub.add_parser("exceptional", help="primes where dynatomic roots and n-cycles disagree")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--X", "--limit", dest="X", type=int, required=True)
    p.add_argument("--graph-threshold", type=int, default=graphs.GRAPH_THRESHOLD)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_exceptional)

    p = sub.add_parser("sweep", help="measure event densities over primes up to X")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, nargs="+", required=True)
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--X", "--limit", dest="X", type=int, required=True)
    p.add_argument("--graph-threshold", type=int, default=1 << 12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="JSONL record file")
    p.add_argument("--resume", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv", action="store_true", help="print the report as CSV")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("report", help="summarize a JSONL record file")
    p.add_argument("--records", required=True)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("selftest", help="run the invariant checks")
    p.set_defaults(func=cmd_selftest)
    return parser


def _validate(args):
    if args.command == "wreath":
        need = {"pn": ("r", "n"), "pk": ("n",), "bound": ("r", "n"), "pnbound": ("n",)}.get(args.action, ())
        missing = [f"--{name}" for name in need if getattr(args, name) is None]
        if missing:
            raise UsageError(f"wreath {args.action} needs {' '.join(missing)}")


def run(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    try:
        args = build_parser().parse_args(argv)
        _validate(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args) or 0
    except OSError as exc:
        print(f"dynadist: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NotSquarefree, TheoremViolation, density.ResumeMismatch, DegreeCapExceeded,
            graphs.GraphTooLarge, ValueError, ArithmeticError) as exc:
        print(f"dynadist: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
