"""``verify`` command line entry point.

    verify identities --seed 7 --n-max 3 --m-max 4 --out identities.json
    verify theorem2 --seed 1 --n-min 2 --n-max 3 --m-max 2 --p inf
    verify triangle --seed 3 --p 1 1.5 inf
    verify multiplier --name Ak --k 2 --n 2 --m 2

Exit codes: 0 all hard checks passed, 1 a hard check failed, 2 bad configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .harness import ConfigError, default_config, exit_code, report_to_json, run_suite, write_csv
from .io import dumps, load_polynomials, multiplier_to_json
from .norms import identity_matrix, triangle_projection_matrix
from .schur import matrix_Ak_direct, matrix_Ak_factored, matrix_Aku, matrix_D, matrix_T, ones

_COMMANDS = {
    "identities": "identities",
    "theorem2": "theorem2_chain",
    "theorem1": "theorem1_poly",
    "polarization": "polarization_bound",
    "triangle": "triangle_projection",
}

_MULTIPLIERS = ("ones", "D", "T", "Aku", "Ak", "Ak-factored", "triangle", "identity")


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _exponent(text: str) -> float:
    if text.lower() in ("inf", "infinity", "oo"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a norm exponent: {text!r}") from None


def _suite_parser(sub, name: str, help: str):
    p = sub.add_parser(name, help=help)
    p.add_argument("--seed", type=int, required=True, help="master seed (required)")
    p.add_argument("--n-min", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--m-min", type=int)
    p.add_argument("--m-max", type=int)
    p.add_argument("--k", type=int, nargs="+", help="symmetrization steps to test")
    p.add_argument("--p", type=_exponent, nargs="+", help="norm exponents, 'inf' for the sup-norm")
    p.add_argument("--instances", type=int)
    p.add_argument("--budget-entries", type=int)
    p.add_argument("--grid", type=int, help="angular resolution of the certified bracket")
    p.add_argument("--refine", type=int, help="local refinement passes of the bracket")
    p.add_argument("--restarts", type=int)
    p.add_argument("--max-iters", type=int)
    p.add_argument("--trials", type=int, help="trial forms per multiplier (triangle suite)")
    p.add_argument("--poly", help="JSON file with one polynomial or a list of them")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--csv", help="also write a flattened CSV of the records")
    p.add_argument("--workers", type=int, help="worker processes; results do not depend on it")
    p.add_argument("--timings", action="store_true", help="record per-case wall time (breaks byte equality)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="verify", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)
    _suite_parser(sub, "identities", "coefficient identities and the multiplier factorization")
    _suite_parser(sub, "theorem2", "one partial symmetrization step against its explicit constant")
    _suite_parser(sub, "theorem1", "norm of L_P against the norm of P")
    _suite_parser(sub, "polarization", "symmetric form against P and the polarization sum")
    _suite_parser(sub, "triangle", "multiplier norms of the triangle projection and the identity")

    mp = sub.add_parser("multiplier", help="dump a named multiplier as JSON")
    mp.add_argument("--name", choices=_MULTIPLIERS, required=True)
    mp.add_argument("--n", type=int, required=True)
    mp.add_argument("--m", type=int, default=2)
    mp.add_argument("--u", type=int, default=1)
    mp.add_argument("--v", type=int, default=2)
    mp.add_argument("--k", type=int, default=1)
    mp.add_argument("--out")
    return parser


def _multiplier(args):
    n, m = args.n, args.m
    if args.name == "ones":
        return ones(n, m)
    if args.name == "D":
        return matrix_D(args.u, args.v, n, m)
    if args.name == "T":
        return matrix_T(args.u, args.v, n, m)
    if args.name == "Aku":
        return matrix_Aku(args.k, args.u, n, m)
    if args.name == "Ak":
        return matrix_Ak_direct(args.k, n, m)
    if args.name == "Ak-factored":
        return matrix_Ak_factored(args.k, n, m)
    if args.name == "triangle":
        return triangle_projection_matrix(n)
    return identity_matrix(n)


def _emit(text: str, path) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "multiplier":
        try:
            A = _multiplier(args)
        except ValueError as exc:
            print(f"verify: {exc}", file=sys.stderr)
            return 2
        _emit(dumps(multiplier_to_json(A)), args.out)
        return 0

    try:
        polys = tuple(load_polynomials(args.poly)) if args.poly else None
        cfg = default_config(
            _COMMANDS[args.command],
            args.seed,
            n_min=args.n_min,
            n_max=args.n_max,
            m_min=args.m_min,
            m_max=args.m_max,
            k_list=tuple(args.k) if args.k else None,
            p_list=tuple(args.p) if args.p else None,
            instances=args.instances,
            budget_entries=args.budget_entries,
            grid=args.grid,
            refine=args.refine,
            restarts=args.restarts,
            max_iters=args.max_iters,
            trials=args.trials,
            polys=polys,
            workers=args.workers,
            timings=args.timings or None,
        ).validate()
    except (ConfigError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"verify: configuration error: {exc}", file=sys.stderr)
        return 2

    report = run_suite(cfg)
    _emit(report_to_json(report), args.out)
    if args.csv:
        write_csv(report, args.csv)
    summary = report["summary"]
    print(
        f"{cfg.suite}: {summary['cases']} cases, {summary['pass']} pass, {summary['fail']} fail, "
        f"{summary['warn']} warn, {summary['report']} report-only, {summary['skip']} skipped",
        file=sys.stderr,
    )
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
