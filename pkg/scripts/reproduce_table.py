"""Run the six scaled-set inclusion checks and print a verdict table.

For every pair the script reports the solver verdict, wall time, and the
largest sampled distance of inner points from the outer set. A Feasible
verdict next to a large sampled distance marks an unsound certificate.

    python3 scripts/reproduce_table.py [--method cor1] [--samples 10000]
"""

import argparse
import time

from cpzinc.fixtures import scaled_set
from cpzinc.oracle import max_outer_distance
from cpzinc.solve import SolveOptions, check_inclusion

CASES = [("P1", "P2", True), ("P2", "P1", False), ("P1", "P3", True),
         ("P3", "P1", False), ("P2", "P3", True), ("P3", "P2", False)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--method", default="cor1", choices=["auto", "prop1", "cor1"])
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'pair':<9}{'truth':<8}{'verdict':<12}{'time[s]':>9}{'restarts':>10}{'max dist':>11}")
    for a, b, truth in CASES:
        inner, outer = scaled_set(a), scaled_set(b)
        t0 = time.perf_counter()
        out = check_inclusion(inner, outer, args.method, SolveOptions(seed=args.seed))
        elapsed = time.perf_counter() - t0
        dist, _ = max_outer_distance(inner, outer, args.samples)
        verdict = "Feasible" if out.feasible else "NotProven"
        flag = "  <-- unsound" if out.feasible and dist > 1e-3 else ""
        print(f"{a}<={b:<5}{str(truth):<8}{verdict:<12}{elapsed:>9.2f}{out.restarts_used:>10}"
              f"{dist:>11.3g}{flag}")


if __name__ == "__main__":
    main()
