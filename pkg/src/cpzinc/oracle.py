"""Numerical membership oracle and sampling-based falsification.

The oracle is one-sided. A small distance corroborates membership, a large
one is evidence of exteriority. It never proves an inclusion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .core import (
    ConPolyZonotope,
    LambdaPoint,
    evaluate,
    monomial_jacobian,
    project_to_constraints,
    sample_points,
)

MAX_SEEDS = 10**6
EXACT_HIT = 1e-28  # squared residual treated as an exact hit


@dataclass(frozen=True)
class OracleOptions:
    grid_per_dim: int = 21
    refine_iters: int = 100
    tol_c: float = 1e-8
    outside_margin: float = 1e-2
    seed: int = 0
    refine_seeds: int = 8
    pool_factor: int = 16
    lambda_sep: float = 0.25
    chunk: int = 2048
    escalate_above: float = 1e-6
    jitter: tuple = (0.05, 0.2, 0.5)
    global_seeds: int = 256

    def __post_init__(self):
        if self.grid_per_dim < 2:
            raise ValueError("grid_per_dim must be >= 2")


@dataclass(frozen=True, eq=False)
class Witness:
    point: np.ndarray
    inner_lambda: LambdaPoint
    outer_distance: float

    def to_dict(self) -> dict:
        return {"point": self.point.tolist(), "lambda": self.inner_lambda.lam.tolist(),
                "distance": float(self.outer_distance)}


def seed_lambdas(s: int, opts: OracleOptions) -> np.ndarray:
    """Grid over [-1, 1]^s, coarsened to at most 1e6 nodes.

    Past six factors the grid is replaced by uniform random seeds.
    """
    if s == 0:
        return np.zeros((1, 0))
    g = opts.grid_per_dim
    while g > 2 and g ** s > MAX_SEEDS:
        g -= 1
    if s > 6 or g ** s > MAX_SEEDS:
        rng = np.random.default_rng(opts.seed)
        return rng.uniform(-1.0, 1.0, size=(MAX_SEEDS // 10, s))
    axis = np.linspace(-1.0, 1.0, g)
    return np.stack(np.meshgrid(*([axis] * s), indexing="ij"), axis=-1).reshape(-1, s)


class MembershipOracle:
    """Precomputed feasible seeds of one set, reusable across query points."""

    def __init__(self, cpz: ConPolyZonotope, opts: OracleOptions = OracleOptions()):
        self.cpz = cpz
        self.opts = opts
        lam = seed_lambdas(cpz.s, opts)
        if cpz.has_constraints:
            lam, ok = project_to_constraints(cpz, lam, opts.tol_c)
            lam = lam[ok]
        self.seeds = lam
        self.points = evaluate(cpz, lam)[0] if lam.shape[0] else np.zeros((0, cpz.d))
        self._tree = cKDTree(self.points) if lam.shape[0] else None
        self.coarse = self._coarse_seeds()

    def _coarse_seeds(self) -> np.ndarray:
        # a small grid over the whole box, so every branch of the map gets a start
        s = self.cpz.s
        if s == 0:
            return np.zeros((1, 0))
        g = max(2, int(np.floor(self.opts.global_seeds ** (1.0 / s) + 1e-9)))
        axis = np.linspace(-1.0, 1.0, g)
        lam = np.stack(np.meshgrid(*([axis] * s), indexing="ij"), axis=-1).reshape(-1, s)
        if self.cpz.has_constraints:
            lam, ok = project_to_constraints(self.cpz, lam, self.opts.tol_c)
            lam = lam[ok]
        return lam

    def distances(self, queries) -> np.ndarray:
        """Upper bounds on the Euclidean distance of each query to the set."""
        Y = np.atleast_2d(np.asarray(queries, dtype=float))
        if Y.shape[1] != self.cpz.d:
            raise ValueError(f"points have dimension {Y.shape[1]}, set has d={self.cpz.d}")
        out = np.full(Y.shape[0], np.inf)
        if self.seeds.shape[0] == 0:
            return out
        for start in range(0, Y.shape[0], self.opts.chunk):
            blk = Y[start:start + self.opts.chunk]
            out[start:start + blk.shape[0]] = self._chunk(blk)
        return out

    def _pick_seeds(self, cand: np.ndarray, k: int) -> np.ndarray:
        """k seeds per query: nearest in x, spread out in lambda.

        ``cand`` holds candidate seeds sorted by x-distance. A candidate is
        skipped when it lies within ``lambda_sep`` (inf-norm) of one already
        taken, and the nearest leftovers fill any remaining slots.
        """
        pool = cand.shape[1]
        lam = self.seeds[cand]  # (B, pool, s)
        B = cand.shape[0]
        rows = np.arange(B)
        picked = np.zeros((B, k), dtype=int)
        chosen = np.full((B, k, lam.shape[2]), np.inf)
        taken = np.zeros(cand.shape, dtype=bool)
        count = np.zeros(B, dtype=int)
        for j in range(pool):
            sep = np.max(np.abs(chosen - lam[:, j:j + 1]), axis=2).min(axis=1)
            take = (sep > self.opts.lambda_sep) & (count < k)
            picked[rows[take], count[take]] = cand[take, j]
            chosen[rows[take], count[take]] = lam[take, j]
            taken[take, j] = True
            count += take
        for j in range(pool):
            take = ~taken[:, j] & (count < k)
            picked[rows[take], count[take]] = cand[take, j]
            count += take
        return picked

    def _chunk(self, Y: np.ndarray) -> np.ndarray:
        m = self.seeds.shape[0]
        k = min(self.opts.refine_seeds, m)
        pool = min(self.opts.pool_factor * k, m)
        dist, cand = self._tree.query(Y, k=pool)
        dist, cand = dist.reshape(len(Y), pool), cand.reshape(len(Y), pool)
        best = dist[:, 0].copy()
        if self.cpz.s == 0:
            return best
        best_lam = self.seeds[cand[:, 0]].copy()
        rows = np.flatnonzero(best > 1e-12)
        if rows.size:
            idx = self._pick_seeds(cand[rows], k)
            self._improve(Y, rows, self.seeds[idx.reshape(-1)], k, best, best_lam)
        # second pass for stubborn points: every pooled seed plus jitter
        # around the best local solution (local minima near folds)
        rows = np.flatnonzero(best > self.opts.escalate_above)
        if rows.size:
            rng = np.random.default_rng([self.opts.seed, rows.size])
            per = self.opts.refine_seeds
            jit = [best_lam[rows, None, :] + sc * rng.normal(size=(rows.size, per, self.cpz.s))
                   for sc in self.opts.jitter]
            starts = np.concatenate([self.seeds[cand[rows]]] + jit, axis=1)
            starts = np.clip(starts, -1.0, 1.0)
            self._improve(Y, rows, starts.reshape(-1, self.cpz.s), starts.shape[1],
                          best, best_lam)
        # last resort: the coarse global grid
        rows = np.flatnonzero(best > self.opts.escalate_above)
        m = self.coarse.shape[0]
        if rows.size and m:
            starts = np.tile(self.coarse, (rows.size, 1))
            self._improve(Y, rows, starts, m, best, best_lam)
        return best

    def _improve(self, Y, rows, starts, per_row, best, best_lam):
        """Refine ``per_row`` starts for each of ``rows``; update best in place."""
        targets = np.repeat(Y[rows], per_row, axis=0)
        lam = self._refine(targets, starts, per_row)
        if self.cpz.has_constraints:
            lam, ok = project_to_constraints(self.cpz, lam, self.opts.tol_c)
        else:
            ok = np.ones(lam.shape[0], dtype=bool)
        x = evaluate(self.cpz, lam)[0]
        dist = np.where(ok, np.linalg.norm(x - targets, axis=1), np.inf).reshape(-1, per_row)
        j = dist.argmin(axis=1)
        d = dist[np.arange(rows.size), j]
        upd = d < best[rows]
        best[rows[upd]] = d[upd]
        best_lam[rows[upd]] = lam.reshape(rows.size, per_row, -1)[upd, j[upd]]

    def _residual(self, lam, targets, rho):
        x, h = evaluate(self.cpz, lam)
        return np.concatenate([x - targets, np.sqrt(rho) * h], axis=1)

    def _jacobian(self, lam, rho):
        JG = np.einsum("dn,bns->bds", self.cpz.G, monomial_jacobian(lam, self.cpz.E))
        if not self.cpz.has_constraints:
            return JG
        JF = np.einsum("pq,bqs->bps", self.cpz.F, monomial_jacobian(lam, self.cpz.R))
        return np.concatenate([JG, np.sqrt(rho) * JF], axis=1)

    def _refine(self, targets: np.ndarray, lam: np.ndarray, per_row: int = 1) -> np.ndarray:
        """Box-constrained Levenberg-Marquardt on |x(lam)-y|^2 + rho |h(lam)|^2.

        Factors sitting on a bound with the gradient pointing outward are
        frozen for the step. Converged rows drop out of the batch; every
        penalty level gets the full ``refine_iters`` budget. Consecutive
        groups of ``per_row`` rows share a target, and a whole group stops
        as soon as one of its members hits the target exactly.
        """
        s = self.cpz.s
        lam = lam.copy()
        schedule = [1.0, 1e2, 1e4, 1e6] if self.cpz.has_constraints else [1.0]
        iters = self.opts.refine_iters
        eye = np.eye(s)
        group = np.arange(lam.shape[0]) // per_row
        hit = np.zeros(group[-1] + 1 if group.size else 0, dtype=bool)
        for rho in schedule:
            mu = np.full(lam.shape[0], 1e-6)
            r = self._residual(lam, targets, rho)
            f = np.einsum("ij,ij->i", r, r)
            hit[group[f < EXACT_HIT]] = True
            live = ~hit[group]
            for _ in range(iters):
                act = np.flatnonzero(live)
                if act.size == 0:
                    break
                L, R_, T = lam[act], r[act], targets[act]
                J = self._jacobian(L, rho)
                g = np.einsum("bks,bk->bs", J, R_)
                frozen = ((L >= 1.0) & (g < 0)) | ((L <= -1.0) & (g > 0))
                J = np.where(frozen[:, None, :], 0.0, J)
                g = np.where(frozen, 0.0, g)
                JJ = np.einsum("bks,bkt->bst", J, J)
                scale = np.maximum(np.einsum("bss->b", JJ) / s, 1.0)
                H = JJ + (mu[act] * scale)[:, None, None] * eye + frozen[:, :, None] * eye
                step = -_batched_solve(H, g)
                trial = np.clip(L + step, -1.0, 1.0)
                r_t = self._residual(trial, T, rho)
                f_t = np.einsum("ij,ij->i", r_t, r_t)
                better = f_t < f[act]
                gain = f[act] - f_t
                upd = act[better]
                lam[upd] = trial[better]
                r[upd] = r_t[better]
                f[upd] = f_t[better]
                mu[act] = np.where(better, np.maximum(mu[act] / 10.0, 1e-12),
                                   np.minimum(mu[act] * 10.0, 1e10))
                done = (better & (gain <= 1e-15 * (1.0 + f_t))) | (mu[act] >= 1e10)
                live[act[done]] = False
                hit[group[act[f[act] < EXACT_HIT]]] = True
                live &= ~hit[group]
        return lam


def _batched_solve(H: np.ndarray, g: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.solve(H, g[..., None])[..., 0]
    except np.linalg.LinAlgError:
        return np.einsum("bst,bt->bs", np.linalg.pinv(H), g)


def membership_distance(point, cpz: ConPolyZonotope, opts: OracleOptions = OracleOptions()) -> float:
    """Best found distance from ``point`` to an admissible point of ``cpz``.

    This is an upper bound on the true distance: 0 means a member was found.
    """
    return float(MembershipOracle(cpz, opts).distances(np.asarray(point, dtype=float)[None])[0])


def inner_samples(inner: ConPolyZonotope, samples: int, opts: OracleOptions):
    return sample_points(inner, samples, tol_c=opts.tol_c, seed=opts.seed)


def _scan(oracle: MembershipOracle, points: np.ndarray, threshold: float | None,
          block: int = 256):
    """Distances in sample order, stopping after the first block with a hit."""
    out = []
    for start in range(0, points.shape[0], block):
        dist = oracle.distances(points[start:start + block])
        out.append(dist)
        if threshold is not None and np.any(dist > threshold):
            break
    return np.concatenate(out) if out else np.zeros(0)


def falsify_inclusion(inner: ConPolyZonotope, outer: ConPolyZonotope, samples: int,
                      opts: OracleOptions = OracleOptions()) -> Witness | None:
    """First sampled point of ``inner`` farther than the margin from ``outer``."""
    if inner.d != outer.d:
        raise ValueError("ambient dimension mismatch")
    draw = inner_samples(inner, samples, opts)
    if len(draw) == 0:
        return None
    dist = _scan(MembershipOracle(outer, opts), draw.points, opts.outside_margin)
    hits = np.flatnonzero(dist > opts.outside_margin)
    if hits.size == 0:
        return None
    i = hits[0]
    return Witness(draw.points[i].copy(), LambdaPoint(draw.lambdas[i]), float(dist[i]))


def check_witness(w: Witness, inner: ConPolyZonotope, outer: ConPolyZonotope,
                  opts: OracleOptions = OracleOptions()) -> list[str]:
    """Re-validate a witness from scratch; returns the list of problems."""
    problems = []
    lam = w.inner_lambda.lam
    if not w.inner_lambda.admissible:
        problems.append("lambda outside the unit box")
    x, h = evaluate(inner, lam)
    if not np.allclose(x, w.point, rtol=0.0, atol=1e-12):
        problems.append("point does not match evaluate(inner, lambda)")
    if h.size and np.max(np.abs(h)) > opts.tol_c:
        problems.append("inner equality residual above tol_c")
    if not w.outer_distance > opts.outside_margin:
        problems.append("recorded distance not above the margin")
    fresh = membership_distance(w.point, outer, opts)
    if not fresh > opts.outside_margin:
        problems.append(f"recomputed outer distance {fresh:.3g} not above the margin")
    return problems


def max_outer_distance(inner: ConPolyZonotope, outer: ConPolyZonotope, samples: int,
                       opts: OracleOptions = OracleOptions(),
                       stop_above: float | None = None) -> tuple[float, int]:
    """Largest oracle distance to ``outer`` over sampled points of ``inner``.

    Returns the distance and the number of points examined. With
    ``stop_above`` the scan ends early once some distance exceeds it.
    """
    draw = inner_samples(inner, samples, opts)
    if len(draw) == 0:
        return 0.0, 0
    dist = _scan(MembershipOracle(outer, opts), draw.points, stop_above)
    return float(dist.max()), int(dist.size)
