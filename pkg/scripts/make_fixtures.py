"""Regenerate the checked-in set documents under fixtures/."""

from pathlib import Path

from cpzinc.fixtures import SCALINGS, example_set, scaled_set
from cpzinc.io import write_set

OUT = Path(__file__).resolve().parent.parent / "fixtures"


def main():
    OUT.mkdir(exist_ok=True)
    write_set(OUT / "example.json", example_set())
    write_set(OUT / "example_pz.json", example_set().without_constraints())
    for name in SCALINGS:
        write_set(OUT / f"{name}.json", scaled_set(name))
    print(f"wrote fixtures to {OUT}")


if __name__ == "__main__":
    main()
