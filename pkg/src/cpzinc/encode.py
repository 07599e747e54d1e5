"""Feasibility encodings for CPZ inclusion and an exact certificate checker.

Three encodings share one variable vector ``z``:

* ``prop1``  -- the certificate (gamma, Gamma, Pi, Psi, psi) with the
  nonsmooth log-of-absolute-sum inequalities;
* ``cor1``   -- the same plus nonnegative split variables alpha_Gamma,
  alpha_Psi so the log arguments become linear;
* ``cz-lp``  -- the constrained-zonotope case, purely linear.

:func:`verify_certificate` re-checks a certificate against the exact
conditions and is what every solver result is gated on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import ConPolyZonotope, SetKind, classify

RANK_RTOL = 1e-10
EPS_LOG = 1e-12


class EncodingError(ValueError):
    pass


def pseudo_inverse(M) -> tuple[np.ndarray, int]:
    """Moore-Penrose pseudo-inverse via SVD and the numerical rank.

    Singular values below ``1e-10 * sigma_max`` count as zero.
    """
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.size == 0:
        raise ValueError("pseudo_inverse of an empty matrix")
    U, sv, Vt = np.linalg.svd(M, full_matrices=False)
    cutoff = RANK_RTOL * (sv[0] if sv.size else 0.0)
    keep = sv > cutoff if sv[0] > 0 else np.zeros_like(sv, dtype=bool)
    inv_sv = np.zeros_like(sv)
    inv_sv[keep] = 1.0 / sv[keep]
    return (Vt.T * inv_sv) @ U.T, int(keep.sum())


@dataclass(frozen=True, eq=False)
class InclusionCertificate:
    gamma: np.ndarray
    Gamma: np.ndarray
    Pi: np.ndarray
    Psi: np.ndarray
    psi: np.ndarray

    def to_dict(self) -> dict:
        return {k: getattr(self, k).tolist() for k in ("gamma", "Gamma", "Pi", "Psi", "psi")}

    @classmethod
    def from_dict(cls, doc: dict, shapes: dict | None = None) -> "InclusionCertificate":
        arrs = {}
        for k in ("gamma", "Gamma", "Pi", "Psi", "psi"):
            a = np.asarray(doc[k], dtype=float)
            if shapes is not None:
                a = a.reshape(shapes[k])
            arrs[k] = a
        return cls(**arrs)

    @classmethod
    def identity(cls, cpz: ConPolyZonotope) -> "InclusionCertificate":
        return cls(np.zeros(cpz.n), np.eye(cpz.n), np.eye(cpz.p),
                   np.eye(cpz.q), np.zeros(cpz.q))


@dataclass(frozen=True, eq=False)
class AlphaCertificate:
    base: InclusionCertificate
    alpha_Gamma: np.ndarray
    alpha_Psi: np.ndarray

    def to_dict(self) -> dict:
        out = self.base.to_dict()
        out["alpha_Gamma"] = self.alpha_Gamma.tolist()
        out["alpha_Psi"] = self.alpha_Psi.tolist()
        return out


def split_nonnegative(block: np.ndarray) -> np.ndarray:
    """alpha with [I -I] alpha = block, alpha >= 0 and minimal column sums."""
    return np.vstack([np.maximum(block, 0.0), np.maximum(-block, 0.0)])


def alpha_certificate(cert: InclusionCertificate) -> AlphaCertificate:
    aG = split_nonnegative(np.column_stack([cert.Gamma, cert.gamma]).T)
    aP = split_nonnegative(np.column_stack([cert.Psi, cert.psi]).T)
    return AlphaCertificate(cert, aG, aP)


def alpha_linking_residual(cert: AlphaCertificate) -> float:
    """Max residual of [Gamma gamma]^T = [I -I] alpha (same for Psi)."""
    out = 0.0
    for blk, alpha in ((np.column_stack([cert.base.Gamma, cert.base.gamma]).T, cert.alpha_Gamma),
                       (np.column_stack([cert.base.Psi, cert.base.psi]).T, cert.alpha_Psi)):
        if alpha.size:
            m = blk.shape[0]
            out = max(out, float(np.max(np.abs(blk - (alpha[:m] - alpha[m:])))))
    return out


@dataclass(frozen=True, eq=False)
class LogArgs:
    """Arguments of a family of log terms: ``W @ z + w`` or ``W @ |z| + w``."""

    W: np.ndarray
    w: np.ndarray
    absolute: bool = False

    def values(self, z: np.ndarray) -> np.ndarray:
        return self.W @ (np.abs(z) if self.absolute else z) + self.w


@dataclass(frozen=True, eq=False)
class LogConstraint:
    """sum_i coeffs[i] * log(args_i(z)) <= 0, with args floored at ``floor``."""

    coeffs: np.ndarray
    args: LogArgs
    floor: float = EPS_LOG
    label: str = ""


@dataclass(frozen=True)
class SizeReport:
    variables: int
    equalities: int
    inequalities: int


@dataclass(frozen=True, eq=False)
class FeasibilitySystem:
    method: str
    num_vars: int
    eq_matrix: np.ndarray
    eq_rhs: np.ndarray
    lower_bounds: np.ndarray
    ineq_constraints: tuple
    lin_ineq_matrix: np.ndarray
    lin_ineq_rhs: np.ndarray
    var_map: dict = field(default_factory=dict)
    inner: ConPolyZonotope | None = None
    outer: ConPolyZonotope | None = None

    @property
    def size_report(self) -> SizeReport:
        bounds = int(np.isfinite(self.lower_bounds).sum())
        return SizeReport(self.num_vars, self.eq_matrix.shape[0],
                          len(self.ineq_constraints) + self.lin_ineq_matrix.shape[0] + bounds)

    def block(self, z: np.ndarray, name: str) -> np.ndarray:
        sl, shape = self.var_map[name]
        return np.asarray(z[sl]).reshape(shape)

    def certificate(self, z: np.ndarray) -> InclusionCertificate:
        """Read the base certificate out of ``z``.

        In the CZ encoding Psi and psi are not variables; they are left
        empty here and filled in by :func:`transport_cz_certificate`.
        """
        vals = {}
        for k in ("gamma", "Gamma", "Pi", "Psi", "psi"):
            if k in self.var_map:
                vals[k] = self.block(z, k)
            else:
                vals[k] = np.zeros((0, 0)) if k == "Psi" else np.zeros(0)
        return InclusionCertificate(**vals)

    def log_values(self, z: np.ndarray) -> np.ndarray:
        out = np.empty(len(self.ineq_constraints))
        cache = {}
        for k, con in enumerate(self.ineq_constraints):
            key = id(con.args)
            if key not in cache:
                cache[key] = np.log(np.maximum(con.args.values(z), con.floor))
            out[k] = con.coeffs @ cache[key] if con.coeffs.size else 0.0
        return out

    def log_jacobian(self, z: np.ndarray) -> np.ndarray:
        """Gradient of each log constraint; the floor region has zero slope.

        For absolute-value arguments the sign subgradient is used.
        """
        jac = np.zeros((len(self.ineq_constraints), self.num_vars))
        cache = {}
        for k, con in enumerate(self.ineq_constraints):
            if not con.coeffs.size:
                continue
            key = id(con.args)
            if key not in cache:
                a = con.args.values(z)
                inv = np.where(a > con.floor, 1.0 / np.maximum(a, con.floor), 0.0)
                W = con.args.W * np.sign(z) if con.args.absolute else con.args.W
                cache[key] = (inv[:, None] * W)
            jac[k] = con.coeffs @ cache[key]
        return jac


class _Layout:
    def __init__(self):
        self.size = 0
        self.var_map = {}

    def add(self, name: str, shape: tuple) -> slice:
        n = int(np.prod(shape)) if len(shape) else 1
        sl = slice(self.size, self.size + n)
        if n == 0:
            # empty blocks (no constraints) are not variables at all
            return sl
        self.var_map[name] = (sl, shape)
        self.size += n
        return sl


class _Rows:
    """Accumulates linear rows over the variable vector."""

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.blocks = []
        self.rhs = []

    def add(self, terms: list[tuple[slice, np.ndarray]], rhs: np.ndarray):
        rhs = np.asarray(rhs, dtype=float).reshape(-1)
        A = np.zeros((rhs.size, self.nvars))
        for sl, M in terms:
            A[:, sl] += M
        self.blocks.append(A)
        self.rhs.append(rhs)

    def build(self) -> tuple[np.ndarray, np.ndarray]:
        if not self.blocks:
            return np.zeros((0, self.nvars)), np.zeros(0)
        return np.vstack(self.blocks), np.concatenate(self.rhs)


# Row-major vec: vec(A X) = kron(A, I) vec(X), vec(X B) = kron(I, B^T) vec(X).
def _left(A: np.ndarray, cols: int) -> np.ndarray:
    return np.kron(A, np.eye(cols))


def _right(B: np.ndarray, rows: int) -> np.ndarray:
    return np.kron(np.eye(rows), B.T)


def _check_pair(inner: ConPolyZonotope, outer: ConPolyZonotope):
    if inner.d != outer.d:
        raise EncodingError(f"ambient dimension mismatch: inner d={inner.d}, outer d={outer.d}")


def _full_rank_pinv(M: np.ndarray, what: str) -> np.ndarray:
    if M.size == 0:
        raise EncodingError(f"{what} is empty")
    pinv, rank = pseudo_inverse(M)
    if rank < min(M.shape):
        raise EncodingError(
            f"{what} is rank deficient (rank {rank} < {min(M.shape)}); "
            "if both sets are constrained zonotopes use method 'cz-lp'")
    return pinv


def _linear_equalities(rows: _Rows, sl: dict, inner, outer):
    n1, q1 = inner.n, inner.q
    p2 = outer.p
    # center: c1 = c2 + G2 gamma
    rows.add([(sl["gamma"], outer.G)], inner.c - outer.c)
    # generators: G1 = G2 Gamma
    rows.add([(sl["Gamma"], _left(outer.G, n1))], inner.G.reshape(-1))
    if p2 == 0:
        return
    # constraint map: Pi F1 - F2 Psi = 0   (vacuous when the inner set has no constraints)
    if q1 > 0:
        rows.add([(sl["Pi"], _right(inner.F, p2)), (sl["Psi"], -_left(outer.F, q1))],
                 np.zeros(p2 * q1))
    # constraint offset: Pi theta1 + F2 psi = theta2
    rows.add([(sl["Pi"], _right(inner.theta.reshape(-1, 1), p2)), (sl["psi"], outer.F)],
             outer.theta)


def _base_layout(inner, outer) -> tuple[_Layout, dict]:
    lay = _Layout()
    n1, n2 = inner.n, outer.n
    sl = {
        "gamma": lay.add("gamma", (n2,)),
        "Gamma": lay.add("Gamma", (n2, n1)),
        "Pi": lay.add("Pi", (outer.p, inner.p)),
        "Psi": lay.add("Psi", (outer.q, inner.q)),
        "psi": lay.add("psi", (outer.q,)),
    }
    return lay, sl


def _abs_sum_selector(nvars: int, sl_vec: slice, sl_mat: slice, rows: int, cols: int) -> np.ndarray:
    # row i selects vec[i] and mat[i, :]
    W = np.zeros((rows, nvars))
    if rows:
        W[:, sl_vec] = np.eye(rows)
        W[:, sl_mat] = np.kron(np.eye(rows), np.ones((1, cols)))
    return W


def _log_rows(pinv: np.ndarray | None, args: LogArgs, s2: int, tag: str) -> list:
    if pinv is None:
        # empty constraint block: (R2^T)^+ log(empty) is the zero vector
        return [LogConstraint(np.zeros(0), args, label=f"{tag}[{k}]") for k in range(s2)]
    return [LogConstraint(pinv[k].copy(), args, label=f"{tag}[{k}]") for k in range(s2)]


def _pinvs(inner, outer):
    _check_pair(inner, outer)
    if outer.s == 0 or outer.n == 0:
        raise EncodingError("outer set has no generators or no factors")
    pE = _full_rank_pinv(outer.E.T.astype(float), "E2^T")
    pR = _full_rank_pinv(outer.R.T.astype(float), "R2^T") if outer.q > 0 else None
    return pE, pR


def encode_prop1(inner: ConPolyZonotope, outer: ConPolyZonotope) -> FeasibilitySystem:
    """Linear equalities (center, generators, constraint map and offset) plus nonsmooth log inequalities on |.|-sums."""
    pE, pR = _pinvs(inner, outer)
    lay, sl = _base_layout(inner, outer)
    nv = lay.size
    rows = _Rows(nv)
    _linear_equalities(rows, sl, inner, outer)
    A, b = rows.build()
    n1, n2, q1, q2 = inner.n, outer.n, inner.q, outer.q
    argsE = LogArgs(_abs_sum_selector(nv, sl["gamma"], sl["Gamma"], n2, n1), np.zeros(n2), True)
    argsR = LogArgs(_abs_sum_selector(nv, sl["psi"], sl["Psi"], q2, q1), np.zeros(q2), True)
    cons = _log_rows(pE, argsE, outer.s, "E") + _log_rows(pR, argsR, outer.s, "R")
    return FeasibilitySystem("prop1", nv, A, b, np.full(nv, -np.inf), tuple(cons),
                             np.zeros((0, nv)), np.zeros(0), lay.var_map, inner, outer)


def _alpha_link(rows: _Rows, sl_mat: slice, sl_vec: slice, sl_alpha: slice,
                m: int, k: int, nvars: int):
    # [M v]^T = [I -I] alpha with M (m x k), v (m,), alpha (2(k+1) x m)
    if m == 0:
        return
    kk = k + 1
    A = np.zeros((kk * m, nvars))
    for j in range(kk):
        for i in range(m):
            r = j * m + i
            if j < k:
                A[r, sl_mat.start + i * k + j] = 1.0
            else:
                A[r, sl_vec.start + i] = 1.0
            A[r, sl_alpha.start + j * m + i] = -1.0
            A[r, sl_alpha.start + (kk + j) * m + i] = 1.0
    rows.blocks.append(A)
    rows.rhs.append(np.zeros(kk * m))


def _alpha_colsum(nvars: int, sl_alpha: slice, rows2: int, m: int) -> np.ndarray:
    # column sums of alpha (rows2 x m)
    W = np.zeros((m, nvars))
    if m:
        W[:, sl_alpha] = np.kron(np.ones((1, rows2)), np.eye(m))
    return W


def encode_cor1(inner: ConPolyZonotope, outer: ConPolyZonotope) -> FeasibilitySystem:
    """Smooth reformulation: log of column sums of nonnegative split variables."""
    pE, pR = _pinvs(inner, outer)
    lay, sl = _base_layout(inner, outer)
    n1, n2, q1, q2 = inner.n, outer.n, inner.q, outer.q
    sl["alpha_Gamma"] = lay.add("alpha_Gamma", (2 * (n1 + 1), n2))
    sl["alpha_Psi"] = lay.add("alpha_Psi", (2 * (q1 + 1), q2))
    nv = lay.size
    rows = _Rows(nv)
    _linear_equalities(rows, sl, inner, outer)
    _alpha_link(rows, sl["Gamma"], sl["gamma"], sl["alpha_Gamma"], n2, n1, nv)
    _alpha_link(rows, sl["Psi"], sl["psi"], sl["alpha_Psi"], q2, q1, nv)
    A, b = rows.build()
    lb = np.full(nv, -np.inf)
    lb[sl["alpha_Gamma"]] = 0.0
    lb[sl["alpha_Psi"]] = 0.0
    argsE = LogArgs(_alpha_colsum(nv, sl["alpha_Gamma"], 2 * (n1 + 1), n2), np.zeros(n2))
    argsR = LogArgs(_alpha_colsum(nv, sl["alpha_Psi"], 2 * (q1 + 1), q2), np.zeros(q2))
    cons = _log_rows(pE, argsE, outer.s, "E") + _log_rows(pR, argsR, outer.s, "R")
    return FeasibilitySystem("cor1", nv, A, b, lb, tuple(cons),
                             np.zeros((0, nv)), np.zeros(0), lay.var_map, inner, outer)


def _cz_constraint_block(cpz: ConPolyZonotope) -> tuple[np.ndarray, np.ndarray]:
    # a Z set reads as a CZ with zero constraint rows over its n factors
    if cpz.has_constraints:
        return cpz.F, cpz.theta
    return np.zeros((0, cpz.n)), np.zeros(0)


def encode_cz_lp(inner: ConPolyZonotope, outer: ConPolyZonotope) -> FeasibilitySystem:
    """Linear test for constrained zonotopes; Psi = Gamma and psi = gamma."""
    for role, cpz in (("inner", inner), ("outer", outer)):
        if classify(cpz) not in (SetKind.CZ, SetKind.Z):
            raise EncodingError(f"{role} set is {classify(cpz).value}, not a CZ or Z")
    _check_pair(inner, outer)
    F1, th1 = _cz_constraint_block(inner)
    F2, th2 = _cz_constraint_block(outer)
    n1, n2, p1, p2 = inner.n, outer.n, F1.shape[0], F2.shape[0]
    lay = _Layout()
    sl = {
        "gamma": lay.add("gamma", (n2,)),
        "Gamma": lay.add("Gamma", (n2, n1)),
        "Pi": lay.add("Pi", (p2, p1)),
        "alpha_Gamma": lay.add("alpha_Gamma", (2 * (n1 + 1), n2)),
    }
    nv = lay.size
    rows = _Rows(nv)
    rows.add([(sl["gamma"], outer.G)], inner.c - outer.c)
    rows.add([(sl["Gamma"], _left(outer.G, n1))], inner.G.reshape(-1))
    if p2:
        rows.add([(sl["Pi"], _right(F1, p2)), (sl["Gamma"], -_left(F2, n1))], np.zeros(p2 * n1))
        rows.add([(sl["Pi"], _right(th1.reshape(-1, 1), p2)), (sl["gamma"], F2)], th2)
    _alpha_link(rows, sl["Gamma"], sl["gamma"], sl["alpha_Gamma"], n2, n1, nv)
    A, b = rows.build()
    lb = np.full(nv, -np.inf)
    lb[sl["alpha_Gamma"]] = 0.0
    C = _alpha_colsum(nv, sl["alpha_Gamma"], 2 * (n1 + 1), n2)
    return FeasibilitySystem("cz-lp", nv, A, b, lb, (), C, np.ones(n2), lay.var_map, inner, outer)


def prop1_size_formula(d, n1, n2, p1, p2, q1, q2, s2) -> SizeReport:
    return SizeReport(n2 * (n1 + 1) + p2 * p1 + q2 * (q1 + 1),
                      d * (n1 + 1) + p2 * (q1 + 1),
                      2 * s2)


def cor1_size_formula(d, n1, n2, p1, p2, q1, q2, s2) -> SizeReport:
    return SizeReport(3 * n2 * (n1 + 1) + p2 * p1 + 3 * q2 * (q1 + 1),
                      (d + n2) * (n1 + 1) + (p2 + q2) * (q1 + 1),
                      2 * (s2 + n2 * (n1 + 1) + q2 * (q1 + 1)))


def transport_cz_certificate(inner: ConPolyZonotope, outer: ConPolyZonotope,
                             gamma: np.ndarray, Gamma: np.ndarray) -> InclusionCertificate:
    """Lift a CZ witness (gamma, Gamma) to the general certificate.

    Psi = Gamma, psi = gamma and Pi = [F2 Psi, theta2 - F2 psi] [F1, theta1]^+.
    """
    p1, q1, p2, q2 = inner.p, inner.q, outer.p, outer.q
    psi = gamma.copy() if q2 else np.zeros(0)
    Psi = Gamma.copy() if (q2 and q1) else np.zeros((q2, q1))
    if p2 == 0 or p1 == 0:
        Pi = np.zeros((p2, p1))
    else:
        lhs = np.column_stack([inner.F, inner.theta])
        rhs = np.column_stack([outer.F @ Psi, outer.theta - outer.F @ psi])
        Pi = rhs @ pseudo_inverse(lhs)[0]
    return InclusionCertificate(gamma.copy(), Gamma.copy(), Pi, Psi, psi)


@dataclass(frozen=True, eq=False)
class CertificateCheckReport:
    eq_residuals: dict
    muE_bound: np.ndarray
    muR_bound: np.ndarray
    ineq_lhs_E: np.ndarray
    ineq_lhs_R: np.ndarray
    verdict: dict
    tol_eq: float
    tol_ineq: float

    @property
    def passed(self) -> bool:
        return all(self.verdict.values())

    def failed(self) -> list[str]:
        return [k for k, ok in self.verdict.items() if not ok]

    def max_violation(self) -> float:
        eq = max(self.eq_residuals.values(), default=0.0)
        ineq = max([0.0, *np.concatenate([self.ineq_lhs_E, self.ineq_lhs_R]).tolist()])
        return max(eq, ineq)

    def to_dict(self) -> dict:
        def num(x):
            return float(x) if np.isfinite(x) else ("inf" if x > 0 else "-inf")
        return {
            "eq_residuals": {k: float(v) for k, v in self.eq_residuals.items()},
            "ineq_lhs_E": [num(x) for x in self.ineq_lhs_E],
            "ineq_lhs_R": [num(x) for x in self.ineq_lhs_R],
            "muE_bound": self.muE_bound.tolist(),
            "muR_bound": self.muR_bound.tolist(),
            "verdict": dict(self.verdict),
        }


def log_combination(coeffs: np.ndarray, bound: np.ndarray) -> np.ndarray:
    """coeffs @ log(bound) with exact zeros in ``bound`` read as log 0 = -inf.

    A -inf term times a positive coefficient is -inf, times a negative one
    +inf; a +inf term anywhere makes the row +inf. Coefficients below
    1e-12 relative to the largest are treated as exact zeros.
    """
    rows = coeffs.shape[0]
    out = np.zeros(rows)
    if bound.size == 0:
        return out
    scale = np.max(np.abs(coeffs)) if coeffs.size else 0.0
    C = np.where(np.abs(coeffs) <= 1e-12 * scale, 0.0, coeffs)
    zero = bound <= 0.0
    logs = np.log(np.where(zero, 1.0, bound))
    for k in range(rows):
        pos = np.any(C[k, zero] < 0)
        neg = np.any(C[k, zero] > 0)
        if pos:
            out[k] = np.inf
        elif neg:
            out[k] = -np.inf
        else:
            out[k] = C[k, ~zero] @ logs[~zero]
    return out


def _shape_check(inner, outer, cert: InclusionCertificate):
    expected = {
        "gamma": (outer.n,), "Gamma": (outer.n, inner.n), "Pi": (outer.p, inner.p),
        "Psi": (outer.q, inner.q), "psi": (outer.q,),
    }
    for k, shape in expected.items():
        got = np.shape(getattr(cert, k))
        if got != shape and not (np.prod(got) == 0 and np.prod(shape) == 0):
            raise ValueError(f"certificate field {k} has shape {got}, expected {shape}")


def verify_certificate(inner: ConPolyZonotope, outer: ConPolyZonotope,
                       cert: InclusionCertificate, tol_eq: float = 1e-8,
                       tol_ineq: float = 1e-8) -> CertificateCheckReport:
    """Check (gamma, Gamma, Pi, Psi, psi) against the exact inclusion conditions.

    Absolute values are exact (no smoothing) and the pseudo-inverses are
    recomputed here, independently of any encoding.
    """
    if inner.d != outer.d:
        raise ValueError("ambient dimension mismatch")
    _shape_check(inner, outer, cert)
    g = np.asarray(cert.gamma, float).reshape(outer.n)
    Gm = np.asarray(cert.Gamma, float).reshape(outer.n, inner.n)
    Pi = np.asarray(cert.Pi, float).reshape(outer.p, inner.p)
    Psi = np.asarray(cert.Psi, float).reshape(outer.q, inner.q)
    psi = np.asarray(cert.psi, float).reshape(outer.q)

    def mx(a):
        return float(np.max(np.abs(a))) if np.size(a) else 0.0

    res = {
        "center": mx(inner.c - outer.c - outer.G @ g),
        "generators": mx(inner.G - outer.G @ Gm),
        "constraint_map": mx(Pi @ inner.F.reshape(inner.p, inner.q) - outer.F @ Psi) if outer.p else 0.0,
        "constraint_offset": mx(Pi @ inner.theta - (outer.theta - outer.F @ psi)) if outer.p else 0.0,
    }
    muE = np.abs(g) + np.abs(Gm).sum(axis=1)
    muR = np.abs(psi) + np.abs(Psi).sum(axis=1)
    pE, _ = pseudo_inverse(outer.E.T.astype(float))
    lhsE = log_combination(pE, muE)
    if outer.q:
        pR, _ = pseudo_inverse(outer.R.T.astype(float))
        lhsR = log_combination(pR, muR)
    else:
        lhsR = np.zeros(outer.s)
    verdict = {k: v <= tol_eq for k, v in res.items()}
    verdict["exponent_E"] = bool(np.all(lhsE <= tol_ineq))
    verdict["exponent_R"] = bool(np.all(lhsR <= tol_ineq))
    return CertificateCheckReport(res, muE, muR, lhsE, lhsR, verdict, tol_eq, tol_ineq)
