"""The illustrative CPZ and its three column-scaled variants."""

import numpy as np

from .core import ConPolyZonotope

EXAMPLE_C = [0.0, 0.0]
EXAMPLE_G = [[1.0, 0.0, 1.0, -1.0],
             [0.0, 1.0, 1.0, 1.0]]
EXAMPLE_E = [[1, 0, 1, 2],
             [0, 1, 1, 0],
             [0, 0, 1, 1]]
EXAMPLE_F = [[1.0, 1.0, 1.0]]
EXAMPLE_THETA = [1.5]
EXAMPLE_R = [[0, 1, 2],
             [1, 0, 0],
             [0, 1, 0]]

# diagonal column scalings (generators, constraint generators) of P1, P2, P3
SCALINGS = {
    "P1": ([0.9, 0.9, 0.72, 0.72], [0.9, 0.81, 0.81]),
    "P2": ([1.0, 1.0, 1.0, 1.0], [1.0, 1.0, 1.0]),
    "P3": ([1.18, 1.18, 1.64, 1.64], [1.18, 1.39, 1.39]),
}

# (inner, outer, inclusion holds)
TABLE_CASES = [
    ("P1", "P2", True),
    ("P2", "P1", False),
    ("P1", "P3", True),
    ("P3", "P1", False),
    ("P2", "P3", True),
    ("P3", "P2", False),
]


def example_set() -> ConPolyZonotope:
    return ConPolyZonotope(EXAMPLE_C, EXAMPLE_G, EXAMPLE_E, EXAMPLE_F, EXAMPLE_THETA,
                           EXAMPLE_R, name="example")


def scaled_set(name: str) -> ConPolyZonotope:
    dG, dF = SCALINGS[name]
    base = example_set()
    return ConPolyZonotope(base.c, base.G @ np.diag(dG), base.E, base.F @ np.diag(dF),
                           base.theta, base.R, name=name)


def unit_box(d: int = 2, scale: float = 1.0, center=None) -> ConPolyZonotope:
    c = np.zeros(d) if center is None else center
    return ConPolyZonotope(c, scale * np.eye(d), np.eye(d, dtype=int), name=f"box{d}")
