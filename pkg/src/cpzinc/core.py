"""Constrained polynomial zonotopes: representation, evaluation and sampling.

A CPZ is the set

    { c + sum_i (prod_k lam_k^E[k,i]) G[:, i]  :
      sum_j (prod_k lam_k^R[k,j]) F[:, j] = theta,  ||lam||_inf <= 1 }

PZ, CZ and Z are the usual special cases (no constraints, linear monomials,
or both).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

MAX_NEWTON_ITERS = 50
STALL_RATIO = 0.99


class SetKind(str, enum.Enum):
    CPZ = "CPZ"
    PZ = "PZ"
    CZ = "CZ"
    Z = "Z"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


def _as_exponents(a) -> np.ndarray:
    a = np.asarray(a)
    if a.dtype.kind in "iu":
        return a.astype(np.int64)
    a = a.astype(float)
    if a.size and np.all(np.isfinite(a)) and np.all(a == np.round(a)):
        return a.astype(np.int64)
    return a


@dataclass(frozen=True, eq=False)
class ConPolyZonotope:
    """The tuple <c, G, E, F, theta, R>.

    Arrays are copied and made read-only. Nothing is validated here; call
    :func:`validate` to list invariant violations.
    """

    c: np.ndarray
    G: np.ndarray
    E: np.ndarray
    F: np.ndarray = None
    theta: np.ndarray = None
    R: np.ndarray = None
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float).reshape(-1)
        G = np.asarray(self.G, dtype=float)
        if G.ndim == 1:
            G = G.reshape(c.size, -1) if c.size else G.reshape(0, 0)
        E = _as_exponents(self.E)
        if E.ndim == 1:
            E = E.reshape(-1, G.shape[1]) if G.shape[1] else E.reshape(0, 0)
        s = E.shape[0]
        if self.F is None:
            F = np.zeros((0, 0))
        else:
            F = np.asarray(self.F, dtype=float)
            if F.ndim == 1:
                F = F.reshape(1, -1) if F.size else F.reshape(0, 0)
        theta = (np.zeros(0) if self.theta is None
                 else np.asarray(self.theta, dtype=float).reshape(-1))
        if self.R is None:
            R = np.zeros((s, 0), dtype=np.int64)
        else:
            R = _as_exponents(self.R)
            if R.ndim == 1:
                R = R.reshape(s, -1) if R.size else R.reshape(s, 0)
        for key, val in (("c", c), ("G", G), ("E", E), ("F", F),
                         ("theta", theta), ("R", R)):
            object.__setattr__(self, key, _frozen(val))

    @property
    def d(self) -> int:
        return self.c.shape[0]

    @property
    def n(self) -> int:
        return self.G.shape[1]

    @property
    def s(self) -> int:
        return self.E.shape[0]

    @property
    def p(self) -> int:
        return self.F.shape[0]

    @property
    def q(self) -> int:
        return self.F.shape[1]

    @property
    def has_constraints(self) -> bool:
        return self.F.size > 0 or self.theta.size > 0

    def without_constraints(self) -> "ConPolyZonotope":
        return ConPolyZonotope(self.c, self.G, self.E, name=self.name)

    def equals(self, other: "ConPolyZonotope") -> bool:
        """Bit-exact field-by-field comparison (shapes and values)."""
        for key in ("c", "G", "E", "F", "theta", "R"):
            a, b = getattr(self, key), getattr(other, key)
            if a.shape != b.shape or not np.array_equal(a, b):
                return False
        return True

    def __repr__(self):
        return (f"ConPolyZonotope(d={self.d}, n={self.n}, s={self.s}, "
                f"p={self.p}, q={self.q}, name={self.name!r})")


@dataclass(frozen=True)
class LambdaPoint:
    lam: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "lam", _frozen(np.asarray(self.lam, float).reshape(-1)))

    @property
    def admissible(self) -> bool:
        return bool(np.all(np.abs(self.lam) <= 1.0))


def validate(cpz: ConPolyZonotope) -> list[str]:
    """Return every invariant violation of ``cpz`` (empty list when valid)."""
    out = []
    d, n, s = cpz.d, cpz.n, cpz.s
    if cpz.G.ndim != 2 or cpz.G.shape[0] != d:
        out.append(f"G row count {cpz.G.shape[0]} does not match center length {d}")
    if cpz.E.ndim != 2 or cpz.E.shape[1] != n:
        out.append(f"E column count {cpz.E.shape[1]} does not match generator count {n}")
    for key in ("E", "R"):
        M = getattr(cpz, key)
        if M.dtype.kind == "f":
            out.append(f"{key}: exponent not a nonnegative integer")
        elif M.size and M.min() < 0:
            out.append(f"{key}: negative exponent")
    if cpz.R.shape[0] != s:
        out.append(f"R row count {cpz.R.shape[0]} does not match E row count {s}")
    if cpz.R.shape[1] != cpz.q:
        out.append(f"R column count {cpz.R.shape[1]} does not match F column count {cpz.q}")
    if cpz.theta.shape[0] != cpz.p:
        out.append(f"theta length mismatch: {cpz.theta.shape[0]} entries for p={cpz.p}")
    present = [cpz.F.size > 0, cpz.theta.size > 0, cpz.R.size > 0]
    if any(present) and not all(present):
        out.append("constraint block incomplete: F, theta, R must be jointly empty or nonempty")
    for key in ("c", "G", "F", "theta"):
        if not np.all(np.isfinite(getattr(cpz, key))):
            out.append(f"{key}: non-finite entries")
    return out


def _power_table(lam: np.ndarray, max_exp: int) -> np.ndarray:
    # table[j] = lam**j by repeated multiplication; table[0] = 1 even for lam = 0
    table = np.empty((max_exp + 1,) + lam.shape)
    table[0] = 1.0
    for j in range(1, max_exp + 1):
        table[j] = table[j - 1] * lam
    return table


def _column_powers(table: np.ndarray, exps: np.ndarray, k: int) -> np.ndarray:
    # lam_k**exps[k, i] for each column i, shape (..., m)
    return np.moveaxis(table[exps[k], ..., k], 0, -1)


def monomials(lam: np.ndarray, exps: np.ndarray) -> np.ndarray:
    """prod_k lam[..., k]**exps[k, i] for every column i; shape (..., m)."""
    lam = np.asarray(lam, dtype=float)
    out = np.ones(lam.shape[:-1] + (exps.shape[1],))
    if exps.size == 0:
        return out
    table = _power_table(lam, int(exps.max()))
    for k in range(exps.shape[0]):
        out *= _column_powers(table, exps, k)
    return out


def monomial_jacobian(lam: np.ndarray, exps: np.ndarray) -> np.ndarray:
    """d monomials / d lam, shape (..., m, s)."""
    lam = np.asarray(lam, dtype=float)
    s, m = exps.shape
    jac = np.zeros(lam.shape[:-1] + (m, s))
    if m == 0 or s == 0:
        return jac
    table = _power_table(lam, int(exps.max()))
    factors = [_column_powers(table, exps, k) for k in range(s)]
    for k in range(s):
        e = exps[k]
        deriv = e * np.moveaxis(table[np.maximum(e - 1, 0), ..., k], 0, -1)
        deriv = np.where(e > 0, deriv, 0.0)
        prod = deriv
        for kk in range(s):
            if kk != k:
                prod = prod * factors[kk]
        jac[..., k] = prod
    return jac


def _check_lambda(cpz: ConPolyZonotope, lam: np.ndarray) -> np.ndarray:
    lam = np.asarray(getattr(lam, "lam", lam), dtype=float)
    if lam.shape[-1] != cpz.s:
        raise ValueError(f"lambda has length {lam.shape[-1]}, set has s={cpz.s}")
    return lam


def evaluate(cpz: ConPolyZonotope, lam) -> tuple[np.ndarray, np.ndarray]:
    """Point and equality residual for one or a batch of factor vectors.

    ``lam`` may have shape (s,) or (N, s). No admissibility check is done.
    """
    lam = _check_lambda(cpz, lam)
    point = cpz.c + monomials(lam, cpz.E) @ cpz.G.T
    residual = monomials(lam, cpz.R) @ cpz.F.T - cpz.theta
    return point, residual


def constraint_residual(cpz: ConPolyZonotope, lam) -> np.ndarray:
    lam = _check_lambda(cpz, lam)
    return monomials(lam, cpz.R) @ cpz.F.T - cpz.theta


def _is_identity(M: np.ndarray) -> bool:
    return M.ndim == 2 and M.shape[0] == M.shape[1] and np.array_equal(
        M, np.eye(M.shape[0], dtype=M.dtype))


def classify(cpz: ConPolyZonotope) -> SetKind:
    linear = _is_identity(cpz.E)
    if not cpz.has_constraints:
        return SetKind.Z if linear else SetKind.PZ
    if linear and _is_identity(cpz.R):
        return SetKind.CZ
    return SetKind.CPZ


def linear_map(M, cpz: ConPolyZonotope) -> ConPolyZonotope:
    """Image of ``cpz`` under x -> M x."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.shape[1] != cpz.d:
        raise ValueError(f"map has {M.shape[1]} columns, set dimension is {cpz.d}")
    return ConPolyZonotope(M @ cpz.c, M @ cpz.G, cpz.E, cpz.F, cpz.theta, cpz.R,
                           name=cpz.name)


@dataclass(frozen=True)
class SampleResult:
    points: np.ndarray  # (k, d)
    lambdas: np.ndarray  # (k, s)
    requested: int
    attempts: int
    seed: int

    def __len__(self):
        return self.points.shape[0]

    def pairs(self) -> list[tuple[np.ndarray, LambdaPoint]]:
        return [(x, LambdaPoint(l)) for x, l in zip(self.points, self.lambdas)]


def _min_norm_step(J: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Batched J^T (J J^T + eps I)^-1 r, a regularised minimum-norm solve."""
    JJ = np.einsum("kps,kqs->kpq", J, J)
    eps = 1e-14 * np.maximum(np.einsum("kpp->k", JJ), 1e-300)
    JJ += eps[:, None, None] * np.eye(J.shape[1])
    try:
        y = np.linalg.solve(JJ, r[..., None])[..., 0]
    except np.linalg.LinAlgError:
        return np.einsum("ksp,kp->ks", np.linalg.pinv(J), r)
    return np.einsum("kps,kp->ks", J, y)


def project_to_constraints(cpz: ConPolyZonotope, lam: np.ndarray,
                           tol_c: float, max_iter: int = MAX_NEWTON_ITERS
                           ) -> tuple[np.ndarray, np.ndarray]:
    """Damped minimum-norm Newton steps onto {h(lam) = 0} inside the unit box.

    Operates on a batch (N, s). Returns the refined batch and a success mask.
    """
    lam = np.clip(np.array(lam, dtype=float), -1.0, 1.0)
    res = constraint_residual(cpz, lam)
    norm = np.max(np.abs(res), axis=1)
    active = norm > tol_c
    for _ in range(max_iter):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        J = monomial_jacobian(lam[idx], cpz.R)  # (k, q, s)
        J = np.einsum("pq,kqs->kps", cpz.F, J)
        step = -_min_norm_step(J, res[idx])
        # factors on a bound that the step pushes outward are held fixed
        L = lam[idx]
        out = ((L >= 1.0) & (step > 0)) | ((L <= -1.0) & (step < 0))
        redo = out.any(axis=1)
        if redo.any():
            Jr = np.where(out[redo][:, None, :], 0.0, J[redo])
            step[redo] = -_min_norm_step(Jr, res[idx[redo]])
        t = np.ones(idx.size)
        base = lam[idx]
        cand = base.copy()
        cand_norm = norm[idx]
        pending = np.arange(idx.size)
        for _ in range(30):
            trial = np.clip(base[pending] + t[pending, None] * step[pending], -1.0, 1.0)
            trial_norm = np.max(np.abs(constraint_residual(cpz, trial)), axis=1)
            ok = trial_norm < cand_norm[pending]
            cand[pending[ok]] = trial[ok]
            cand_norm[pending[ok]] = trial_norm[ok]
            pending = pending[~ok]
            if pending.size == 0:
                break
            t[pending] *= 0.5
        # rows whose residual shrinks by under 1% are treated as stalled
        slow = cand_norm > STALL_RATIO * norm[idx]
        lam[idx] = cand
        norm[idx] = cand_norm
        res[idx] = constraint_residual(cpz, cand)
        active[idx[slow]] = False
        active &= norm > tol_c
    return lam, norm <= tol_c


def sample_points(cpz: ConPolyZonotope, count: int, tol_c: float = 1e-10,
                  seed: int = 0, max_attempts: int | None = None) -> SampleResult:
    """Draw up to ``count`` admissible points of ``cpz``.

    Factors are drawn uniformly in the unit box and, if the set has equality
    constraints, pulled onto them by :func:`project_to_constraints`. Draws
    that do not converge are discarded, so fewer than ``count`` points may
    come back.
    """
    if count <= 0:
        raise ValueError("count must be positive")
    rng = np.random.default_rng(seed)
    budget = max_attempts if max_attempts is not None else 20 * count
    kept, attempts, have = [], 0, 0
    while have < count and attempts < budget:
        batch = min(max(2 * (count - have), 64), budget - attempts)
        lam = rng.uniform(-1.0, 1.0, size=(batch, cpz.s))
        attempts += batch
        if cpz.has_constraints:
            lam, ok = project_to_constraints(cpz, lam, tol_c)
            lam = lam[ok]
        kept.append(lam)
        have += lam.shape[0]
    lams = np.concatenate(kept)[:count] if kept else np.zeros((0, cpz.s))
    points = evaluate(cpz, lams)[0] if lams.shape[0] else np.zeros((0, cpz.d))
    return SampleResult(points, lams, count, attempts, seed)
