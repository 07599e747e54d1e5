"""Feasibility solvers for the inclusion encodings.

Every ``Feasible`` outcome has been re-checked by
:func:`~cpzinc.encode.verify_certificate`; solver convergence alone is never
reported as a proof. ``NotProven`` says nothing about non-inclusion.
"""

from __future__ import annotations

import enum
import logging
import time
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog, minimize

from .core import ConPolyZonotope, SetKind, classify
from .encode import (
    AlphaCertificate,
    CertificateCheckReport,
    FeasibilitySystem,
    InclusionCertificate,
    alpha_certificate,
    encode_cor1,
    encode_cz_lp,
    encode_prop1,
    transport_cz_certificate,
    verify_certificate,
)

log = logging.getLogger(__name__)

METHODS = ("prop1", "cor1", "cz-lp", "auto")


class Status(str, enum.Enum):
    FEASIBLE = "feasible"
    NOT_PROVEN = "not_proven"


@dataclass(frozen=True)
class SolveOptions:
    tol_eq: float = 1e-8
    tol_ineq: float = 1e-8
    max_iter: int = 2000
    restarts: int = 16
    seed: int = 0
    eps_log: float = 1e-12
    time_limit: float = 120.0
    init_scale: float = 0.5

    def __post_init__(self):
        if min(self.tol_eq, self.tol_ineq, self.eps_log, self.time_limit) <= 0:
            raise ValueError("tolerances and time limit must be positive")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")


@dataclass(frozen=True, eq=False)
class SolveOutcome:
    status: Status
    method: str
    certificate: InclusionCertificate | None = None
    alpha: AlphaCertificate | None = None
    report: CertificateCheckReport | None = None
    best_violation: float = float("nan")
    wall_time: float = 0.0
    restarts_used: int = 0

    @property
    def feasible(self) -> bool:
        return self.status is Status.FEASIBLE


def _verify_system_point(sys: FeasibilitySystem, z: np.ndarray, opts: SolveOptions):
    inner, outer = sys.inner, sys.outer
    if sys.method == "cz-lp":
        cert = transport_cz_certificate(inner, outer, sys.block(z, "gamma"), sys.block(z, "Gamma"))
    else:
        cert = sys.certificate(z)
    report = verify_certificate(inner, outer, cert, opts.tol_eq, opts.tol_ineq)
    return cert, report


def solve_linear_feasibility(sys: FeasibilitySystem, opts: SolveOptions = SolveOptions()) -> SolveOutcome:
    """Phase-1 LP: minimise the total artificial violation of the linear system.

    Variables are ``[z, e+, e-, t]`` with ``A z + e+ - e- = b`` and
    ``C z - t <= d``; the system is feasible iff the optimum is ~0.
    """
    if sys.ineq_constraints:
        raise ValueError("system has log constraints; use solve_nonlinear_feasibility")
    t0 = time.perf_counter()
    A, b = sys.eq_matrix, sys.eq_rhs
    C, dvec = sys.lin_ineq_matrix, sys.lin_ineq_rhs
    nv, me, mi = sys.num_vars, A.shape[0], C.shape[0]
    A_eq = np.hstack([A, np.eye(me), -np.eye(me), np.zeros((me, mi))])
    A_ub = np.hstack([C, np.zeros((mi, 2 * me)), -np.eye(mi)])
    cost = np.concatenate([np.zeros(nv), np.ones(2 * me + mi)])
    bounds = [(lb if np.isfinite(lb) else None, None) for lb in sys.lower_bounds]
    bounds += [(0, None)] * (2 * me + mi)
    res = linprog(cost, A_ub=A_ub if mi else None, b_ub=dvec if mi else None,
                  A_eq=A_eq, b_eq=b, bounds=bounds, method="highs")
    if res.status != 0:
        raise RuntimeError(f"phase-1 LP failed: {res.message}")
    z = res.x[:nv]
    worst = float(np.max(res.x[nv:])) if res.x.size > nv else 0.0
    elapsed = time.perf_counter() - t0
    if res.fun <= opts.tol_eq:
        cert, report = _verify_system_point(sys, z, opts)
        if report.passed:
            return SolveOutcome(Status.FEASIBLE, sys.method, cert, None, report, 0.0, elapsed, 1)
        worst = max(worst, report.max_violation())
    return SolveOutcome(Status.NOT_PROVEN, sys.method, best_violation=worst,
                        wall_time=elapsed, restarts_used=1)


class _Reduced:
    """Inequality part of a system over nullspace coordinates z = z0 + N y."""

    def __init__(self, sys: FeasibilitySystem, eps_log: float):
        self.sys = sys
        self.eps_log = eps_log
        A, b = sys.eq_matrix, sys.eq_rhs
        if A.shape[0]:
            U, sv, Vt = np.linalg.svd(A, full_matrices=True)
            rank = int((sv > 1e-12 * sv[0]).sum()) if sv.size and sv[0] > 0 else 0
            self.z0 = Vt[:rank].T @ ((U[:, :rank].T @ b) / sv[:rank])
            self.N = Vt[rank:].T
        else:
            self.z0 = np.zeros(sys.num_vars)
            self.N = np.eye(sys.num_vars)
        self.eq_residual = float(np.max(np.abs(A @ self.z0 - b))) if A.shape[0] else 0.0
        self.bounded = np.isfinite(sys.lower_bounds)
        self.lb = sys.lower_bounds[self.bounded]
        self.cons = [c for c in sys.ineq_constraints if c.coeffs.size]
        # group rows by shared argument map so each log is evaluated once
        self.groups = []
        seen = {}
        for c in self.cons:
            key = id(c.args)
            if key not in seen:
                seen[key] = len(self.groups)
                self.groups.append((c.args, []))
            self.groups[seen[key]][1].append(c.coeffs)
        self.groups = [(args, np.array(rows)) for args, rows in self.groups]

    @property
    def dim(self) -> int:
        return self.N.shape[1]

    def z(self, y: np.ndarray) -> np.ndarray:
        return self.z0 + self.N @ y

    def constraint_values(self, z: np.ndarray) -> np.ndarray:
        """Stacked ``g(z) <= 0`` values: log rows then bound rows."""
        parts = []
        for args, P in self.groups:
            a = args.values(z)
            parts.append(P @ np.log(np.maximum(a, self.eps_log)))
        parts.append(self.lb - z[self.bounded])
        return np.concatenate(parts) if parts else np.zeros(0)

    def constraint_jacobian(self, z: np.ndarray) -> np.ndarray:
        rows = []
        for args, P in self.groups:
            a = args.values(z)
            inv = np.where(a > self.eps_log, 1.0 / np.maximum(a, self.eps_log), 0.0)
            W = args.W * np.sign(z) if args.absolute else args.W
            rows.append(P @ (inv[:, None] * W))
        B = np.zeros((int(self.bounded.sum()), z.size))
        B[np.arange(B.shape[0]), np.flatnonzero(self.bounded)] = -1.0
        rows.append(B)
        return np.vstack(rows)

    def merit(self, y: np.ndarray) -> tuple[float, np.ndarray]:
        z = self.z(y)
        g = self.constraint_values(z)
        h = np.maximum(g, 0.0)
        val = float(h @ h)
        if val == 0.0:
            return 0.0, np.zeros_like(y)
        grad = 2.0 * (h @ self.constraint_jacobian(z))
        return val, self.N.T @ grad

    def worst(self, y: np.ndarray) -> float:
        g = self.constraint_values(self.z(y))
        return float(max(g.max(initial=0.0), 0.0))


def _slsqp(red: _Reduced, y: np.ndarray, objective, max_iter: int) -> np.ndarray:
    res = minimize(
        objective, y, jac=True, method="SLSQP",
        constraints=[{"type": "ineq",
                      "fun": lambda v: -red.constraint_values(red.z(v)),
                      "jac": lambda v: -red.constraint_jacobian(red.z(v)) @ red.N}],
        options={"maxiter": max_iter, "ftol": 1e-15},
    )
    return res.x if np.all(np.isfinite(res.x)) else y


def _polish(red: _Reduced, y: np.ndarray, max_iter: int) -> np.ndarray:
    """Closest point (in y) satisfying the inequalities."""
    y_star = y.copy()
    return _slsqp(red, y, lambda v: (0.5 * float((v - y_star) @ (v - y_star)), v - y_star),
                  max_iter)


def _tighten(red: _Reduced, y: np.ndarray, max_iter: int) -> np.ndarray:
    """Drive each split pair toward complementarity, keeping the system satisfied.

    With both halves of a split positive, the log argument overstates the
    exact |.|-sum the verifier uses; at zero complementarity the two agree.
    """
    pos, neg = [], []
    for name in ("alpha_Gamma", "alpha_Psi"):
        if name not in red.sys.var_map:
            continue
        sl, (rows, cols) = red.sys.var_map[name]
        idx = np.arange(sl.start, sl.stop).reshape(rows, cols)
        pos.append(idx[:rows // 2].ravel())
        neg.append(idx[rows // 2:].ravel())
    if not pos:
        return y
    pos, neg = np.concatenate(pos), np.concatenate(neg)

    def objective(v):
        z = red.z(v)
        grad = np.zeros_like(z)
        grad[pos], grad[neg] = z[neg], z[pos]
        return float(z[pos] @ z[neg]), red.N.T @ grad

    return _slsqp(red, y, objective, max_iter)


def _certify(sys: FeasibilitySystem, z: np.ndarray, opts: SolveOptions):
    cert = sys.certificate(z)
    report = verify_certificate(sys.inner, sys.outer, cert, opts.tol_eq, opts.tol_ineq)
    alpha = alpha_certificate(cert) if sys.method == "cor1" else None
    return cert, alpha, report


# L-BFGS often stalls a little above zero near the boundary of the feasible
# region; SLSQP finishes those. The verifier gates everything anyway.
POLISH_GATE = 1e-4


def solve_nonlinear_feasibility(sys: FeasibilitySystem, opts: SolveOptions = SolveOptions()) -> SolveOutcome:
    """Multi-start penalty search for a point of ``sys``.

    The linear equalities are eliminated (particular solution plus nullspace
    basis); the sum of squared hinge violations of the log inequalities and
    bounds is minimised with L-BFGS from ``opts.restarts`` starts: the
    minimum-norm solution first, then Gaussian draws of scale
    ``opts.init_scale``. Low-merit candidates are polished and handed to the
    exact verifier; the first restart that verifies wins.
    """
    t0 = time.perf_counter()
    red = _Reduced(sys, opts.eps_log)
    if red.eq_residual > opts.tol_eq:
        return SolveOutcome(Status.NOT_PROVEN, sys.method, best_violation=red.eq_residual,
                            wall_time=time.perf_counter() - t0, restarts_used=0)
    rng = np.random.default_rng(opts.seed)
    starts = [np.zeros(red.dim)] + [opts.init_scale * rng.standard_normal(red.dim)
                                    for _ in range(opts.restarts - 1)]
    best = np.inf
    used = 0
    for k, y0 in enumerate(starts):
        if time.perf_counter() - t0 > opts.time_limit:
            log.info("time limit reached after %d restarts", used)
            break
        used = k + 1
        res = minimize(red.merit, y0, jac=True, method="L-BFGS-B",
                       options={"maxiter": opts.max_iter, "gtol": 1e-14, "ftol": 1e-20})
        y = res.x
        if res.fun > POLISH_GATE:
            best = min(best, red.worst(y))
            continue
        for polish in (None, _polish, _tighten):
            if polish is not None:
                y = polish(red, y, opts.max_iter)
            cert, alpha, report = _certify(sys, red.z(y), opts)
            if report.passed:
                return SolveOutcome(Status.FEASIBLE, sys.method, cert, alpha, report, 0.0,
                                    time.perf_counter() - t0, used)
            best = min(best, report.max_violation())
    return SolveOutcome(Status.NOT_PROVEN, sys.method, best_violation=float(best),
                        wall_time=time.perf_counter() - t0, restarts_used=used)


def resolve_method(inner: ConPolyZonotope, outer: ConPolyZonotope, method: str) -> str:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    if method != "auto":
        return method
    linear = {SetKind.CZ, SetKind.Z}
    return "cz-lp" if classify(inner) in linear and classify(outer) in linear else "cor1"


def check_inclusion(inner: ConPolyZonotope, outer: ConPolyZonotope, method: str = "auto",
                    opts: SolveOptions = SolveOptions()) -> SolveOutcome:
    """Try to certify ``inner`` is a subset of ``outer``."""
    method = resolve_method(inner, outer, method)
    if method == "cz-lp":
        return solve_linear_feasibility(encode_cz_lp(inner, outer), opts)
    encoder = encode_prop1 if method == "prop1" else encode_cor1
    return solve_nonlinear_feasibility(encoder(inner, outer), opts)
