"""Random set generators for property tests and experiment scripts.

All generators take a ``numpy.random.Generator`` and only produce sets that
the log-inequality encoders accept (full-rank exponent transposes) and whose
constraint block has a known admissible solution, so sampling never comes
back empty by construction.
"""

from __future__ import annotations

import numpy as np

from .core import ConPolyZonotope, monomials
from .encode import pseudo_inverse


def _full_rank_exponents(rng: np.random.Generator, s: int, m: int, max_exp: int) -> np.ndarray:
    while True:
        E = rng.integers(0, max_exp + 1, size=(s, m))
        if m == 0 or pseudo_inverse(E.T.astype(float))[1] == min(s, m):
            return E


def random_cpz(rng: np.random.Generator, d_max: int = 3, n_max: int = 6, s_max: int = 4,
               q_max: int = 4, max_exp: int = 2) -> ConPolyZonotope:
    """A valid CPZ with d <= d_max, n <= n_max, s <= s_max, q <= q_max."""
    d = int(rng.integers(1, d_max + 1))
    n = int(rng.integers(1, n_max + 1))
    s = int(rng.integers(1, s_max + 1))
    q = int(rng.integers(0, q_max + 1))
    c = rng.normal(size=d)
    G = rng.normal(size=(d, n))
    E = _full_rank_exponents(rng, s, n, max_exp)
    if q == 0:
        return ConPolyZonotope(c, G, E)
    p = int(rng.integers(1, q + 1))
    F = rng.normal(size=(p, q))
    R = _full_rank_exponents(rng, s, q, max_exp)
    lam_star = rng.uniform(-0.9, 0.9, size=s)
    theta = F @ monomials(lam_star, R)
    return ConPolyZonotope(c, G, E, F, theta, R)


def random_cz(rng: np.random.Generator, d_max: int = 3, s_max: int = 4) -> ConPolyZonotope:
    """A constrained zonotope with E = R = I and a nonempty feasible region."""
    d = int(rng.integers(1, d_max + 1))
    s = int(rng.integers(2, s_max + 1))
    p = int(rng.integers(1, s))
    F = rng.normal(size=(p, s))
    theta = F @ rng.uniform(-0.4, 0.4, size=s)
    eye = np.eye(s, dtype=np.int64)
    return ConPolyZonotope(rng.normal(size=d), rng.normal(size=(d, s)), eye, F, theta, eye)


def right_scaled(cpz: ConPolyZonotope, delta_G, delta_F=None) -> ConPolyZonotope:
    """Scale generator (and constraint generator) columns, keeping everything else."""
    delta_F = delta_G if delta_F is None else delta_F
    F = cpz.F @ np.diag(delta_F) if cpz.has_constraints else None
    return ConPolyZonotope(cpz.c, cpz.G @ np.diag(delta_G), cpz.E, F,
                           cpz.theta if cpz.has_constraints else None,
                           cpz.R if cpz.has_constraints else None)


def random_cz_pair(rng: np.random.Generator, delta_max: float = 0.8):
    """(inner, outer) with inner = outer right-scaled by delta <= delta_max.

    The scaled constraint block keeps the inner set nonempty: theta is
    realised by a factor vector inside the shrunk box.
    """
    outer = random_cz(rng)
    s = outer.s
    delta = rng.uniform(0.2, delta_max, size=s)
    lam_star = delta * rng.uniform(-0.4, 0.4, size=s)
    theta = outer.F @ lam_star
    outer = ConPolyZonotope(outer.c, outer.G, outer.E, outer.F, theta, outer.R)
    return right_scaled(outer, delta), outer


def random_pair_with_dims(rng: np.random.Generator):
    """Two sets of one ambient dimension with independent random sizes.

    Entries are arbitrary (nonempty constraint sets are not guaranteed);
    this feeds encoders, not samplers. Returns ``(dims, inner, outer)``
    where ``dims`` holds d, n1, n2, s1, s2, p1, p2, q1, q2.
    """
    d = int(rng.integers(1, 4))
    dims = {"d": d}
    sets = []
    for tag in ("1", "2"):
        n = int(rng.integers(1, 6))
        s = int(rng.integers(1, 5))
        q = int(rng.integers(0, 5))
        p = int(rng.integers(1, 4)) if q else 0
        E = _full_rank_exponents(rng, s, n, 3)
        c, G = rng.normal(size=d), rng.normal(size=(d, n))
        if q:
            R = _full_rank_exponents(rng, s, q, 3)
            sets.append(ConPolyZonotope(c, G, E, rng.normal(size=(p, q)), rng.normal(size=p), R))
        else:
            sets.append(ConPolyZonotope(c, G, E))
        dims.update({f"n{tag}": n, f"s{tag}": s, f"p{tag}": p, f"q{tag}": q})
    return dims, sets[0], sets[1]
