"""Write point clouds of the example set, its unconstrained version and
the three scaled sets to CSV files for plotting."""

import argparse
from pathlib import Path

from cpzinc.core import sample_points
from cpzinc.fixtures import SCALINGS, example_set, scaled_set
from cpzinc.io import write_points_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("samples"))
    ap.add_argument("--count", type=int, default=5000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    sets = {"example": example_set(), "example_pz": example_set().without_constraints()}
    sets.update({name: scaled_set(name) for name in SCALINGS})
    for name, S in sets.items():
        draw = sample_points(S, args.count, seed=args.seed)
        write_points_csv(args.out / f"{name}.csv", draw.points, S.d)
        print(f"{name}: {len(draw)} points -> {args.out / f'{name}.csv'}")


if __name__ == "__main__":
    main()
