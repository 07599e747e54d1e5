"""Command line: ``cpzinc check | sample | map``.

Exit codes: 0 proven / success, 1 usage, IO or encoding error,
2 not proven (or no points sampled), 3 falsified.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .core import linear_map, sample_points
from .encode import EncodingError
from .io import (
    SetDocumentError,
    load_matrix,
    parse_set,
    verdict_document,
    write_points_csv,
    write_set,
)
from .oracle import OracleOptions, falsify_inclusion
from .solve import METHODS, SolveOptions, check_inclusion, resolve_method

EXIT_OK, EXIT_ERROR, EXIT_NOT_PROVEN, EXIT_FALSIFIED = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cpzinc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="certify inner <= outer")
    p.add_argument("--inner", required=True, type=Path)
    p.add_argument("--outer", required=True, type=Path)
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--tol-eq", type=float, default=SolveOptions.tol_eq)
    p.add_argument("--tol-ineq", type=float, default=SolveOptions.tol_ineq)
    p.add_argument("--restarts", type=int, default=SolveOptions.restarts)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--falsify", type=int, metavar="N", default=0,
                   help="on failure, search N inner samples for a counterexample")
    p.add_argument("--json", type=Path, dest="json_path")
    p.add_argument("--time-limit", type=float, default=SolveOptions.time_limit)

    p = sub.add_parser("sample", help="export admissible points as CSV")
    p.add_argument("--set", required=True, type=Path, dest="set_path")
    p.add_argument("--count", required=True, type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol-c", type=float, default=1e-10)
    p.add_argument("--out", required=True, type=Path)

    p = sub.add_parser("map", help="apply a linear map x -> M x")
    p.add_argument("--matrix", required=True, type=Path)
    p.add_argument("--set", required=True, type=Path, dest="set_path")
    p.add_argument("--out", required=True, type=Path)
    return parser


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_ERROR


def cmd_check(args) -> int:
    try:
        inner, outer = parse_set(args.inner), parse_set(args.outer)
        opts = SolveOptions(tol_eq=args.tol_eq, tol_ineq=args.tol_ineq, restarts=args.restarts,
                            seed=args.seed, time_limit=args.time_limit)
        method = resolve_method(inner, outer, args.method)
        t0 = time.perf_counter()
        outcome = check_inclusion(inner, outer, method, opts)
    except (OSError, SetDocumentError, EncodingError, ValueError) as exc:
        return _fail(str(exc))
    witness = None
    if outcome.feasible:
        status, code = "proven", EXIT_OK
    else:
        status, code = "not_proven", EXIT_NOT_PROVEN
        if args.falsify > 0:
            witness = falsify_inclusion(inner, outer, args.falsify, OracleOptions(seed=args.seed))
            if witness is not None:
                status, code = "falsified", EXIT_FALSIFIED
    elapsed = time.perf_counter() - t0
    print(f"{inner.name} <= {outer.name}  method={method}  seed={args.seed}")
    print(f"status: {status}  ({elapsed:.2f} s, {outcome.restarts_used} restart(s))")
    if outcome.feasible:
        worst = max(outcome.report.eq_residuals.values())
        print(f"certificate verified: max equality residual {worst:.2e}")
    else:
        print(f"best violation: {outcome.best_violation:.3g}")
    if witness is not None:
        print(f"witness point {witness.point.tolist()} at distance {witness.outer_distance:.4g}")
    if args.json_path:
        doc = verdict_document(str(args.inner), str(args.outer), method, status, elapsed,
                               outcome, witness, seed=args.seed)
        try:
            args.json_path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
        except OSError as exc:
            return _fail(str(exc))
    return code


def cmd_sample(args) -> int:
    try:
        cpz = parse_set(args.set_path)
        result = sample_points(cpz, args.count, tol_c=args.tol_c, seed=args.seed)
        write_points_csv(args.out, result.points, cpz.d)
    except (OSError, SetDocumentError, ValueError) as exc:
        return _fail(str(exc))
    print(f"wrote {len(result)} of {args.count} points to {args.out} (seed={args.seed}, "
          f"{result.attempts} draws)")
    return EXIT_OK if len(result) else EXIT_NOT_PROVEN


def cmd_map(args) -> int:
    try:
        M = load_matrix(args.matrix)
        cpz = parse_set(args.set_path)
        write_set(args.out, linear_map(M, cpz))
    except (OSError, SetDocumentError, ValueError) as exc:
        return _fail(str(exc))
    print(f"wrote mapped set ({M.shape[0]}-dimensional) to {args.out}")
    return EXIT_OK


COMMANDS = {"check": cmd_check, "sample": cmd_sample, "map": cmd_map}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
