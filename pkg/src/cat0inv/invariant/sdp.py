"""The realization program as a semidefinite program over Gram matrices.

For a profile with weights t, radial distances d_i and pairwise distances
D_ij, the invariant is

    delta = min  <t t^T, G> / sum_i t_i d_i^2

over PSD Gram matrices G with G_ii = d_i^2 (norm pinning) and
G_ii + G_jj - 2 G_ij <= D_ij^2 (the 1-Lipschitz condition).  The denominator
is a constant, so the objective is linear in G.

Substituting G = Diag(d) R Diag(d) reduces everything to a correlation
matrix: minimize c^T R c with c_i = t_i d_i subject to R PSD, R_ii = 1 and
the elementwise floors R_ij >= rho_ij = (d_i^2 + d_j^2 - D_ij^2)/(2 d_i d_j).
Support points sitting at the barycenter force their realization vector to 0
and drop out of both the objective and the constraints.

The primary solver is an over-relaxed ADMM splitting between the PSD cone
(eigenvalue projection) and the polyhedral part (diagonal pinning plus floor
clipping).  Optimality is certified by repairing a dual-feasible point from
the active floors; a dense log-barrier Newton method is kept as a fallback
certifier.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import lsq_linear

from .profile import DistanceProfile


class SolverError(RuntimeError):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


@dataclass
class GramRealization:
    """PSD matrix G with G_ij = <phi(p_i), phi(p_j)> for a realization phi."""
    gram: np.ndarray
    radial: np.ndarray
    pairwise: np.ndarray

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.gram)[0])

    def norm_residual(self) -> float:
        return float(np.max(np.abs(np.diag(self.gram) - self.radial ** 2)))

    def lipschitz_residual(self) -> float:
        g = self.gram
        sq = np.diag(g)[:, None] + np.diag(g)[None, :] - 2.0 * g
        res = sq - self.pairwise ** 2
        np.fill_diagonal(res, 0.0)
        return float(np.max(res))

    def feasible(self, tol: float = 1e-8) -> bool:
        return (self.min_eigenvalue() >= -max(tol, 1e-9)
                and self.norm_residual() <= tol
                and self.lipschitz_residual() <= tol)

    def rayleigh_quotient(self, weights) -> float:
        w = np.asarray(weights, float)
        den = float(np.sum(w * self.radial ** 2))
        return float(w @ self.gram @ w) / den

    def to_json(self) -> dict:
        return {"gram": self.gram.tolist()}


@dataclass
class DeltaResult:
    value: float
    witness: GramRealization
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"value": self.value, "diagnostics": self.diagnostics,
                "witness": self.witness.to_json()}


# ---------------------------------------------------------------- reduction
def _reduce(profile: DistanceProfile, weights, zero_tol: float = 1e-12):
    t = np.asarray(weights, float)
    d = profile.radial
    scale = max(float(np.max(d)), 1e-300)
    keep = np.where(d > zero_tol * scale)[0]
    if keep.size == 0:
        raise SolverError("all support points coincide with the barycenter")
    dk = d[keep]
    tk = t[keep]
    P = profile.pairwise[np.ix_(keep, keep)]
    c = tk * dk
    rho = (dk[:, None] ** 2 + dk[None, :] ** 2 - P ** 2) / (2.0 * np.outer(dk, dk))
    rho = np.clip(rho, -1.0, 1.0)
    np.fill_diagonal(rho, 1.0)
    denom = float(np.sum(tk * dk * dk))
    return c, rho, denom, keep


def _expand_witness(profile, R, keep) -> GramRealization:
    m = profile.size
    d = profile.radial
    G = np.zeros((m, m))
    dk = d[keep]
    G[np.ix_(keep, keep)] = np.outer(dk, dk) * R
    return GramRealization(G, profile.radial.copy(), profile.pairwise.copy())


# ---------------------------------------------------------------- ADMM core
def _admm(c, rho, tol: float = 1e-10, max_iter: int = 100000):
    k = len(c)
    C = np.outer(c, c)
    sigma = max(float(np.sum(c * c)) / k, 1e-8)
    Z = np.ones((k, k))
    U = np.zeros((k, k))
    it = 0
    rp = rd = math.inf
    for it in range(1, max_iter + 1):
        W = Z - U - C / sigma
        W = 0.5 * (W + W.T)
        evals, evecs = np.linalg.eigh(W)
        pos = evals > 0
        R = (evecs[:, pos] * evals[pos]) @ evecs[:, pos].T
        Znew = np.maximum(R + U, rho)
        np.fill_diagonal(Znew, 1.0)
        rp = float(np.linalg.norm(R - Znew))
        rd = sigma * float(np.linalg.norm(Znew - Z))
        Z = Znew
        U += R - Z
        if rp < tol * k and rd < tol * k:
            break
        if it % 500 == 0:  # residual balancing
            if rp > 10 * rd:
                sigma *= 2.0
                U /= 2.0
            elif rd > 10 * rp:
                sigma /= 2.0
                U *= 2.0
    return Z, {"iterations": it, "primal_residual": rp, "dual_residual": rd}


def _dual_lower_bound(c, rho, R, act_tol: float = 1e-7, rank_tol: float = 1e-7):
    """Repair a dual-feasible point supported on the active floors.

    Complementary slackness forces the dual slack matrix S to annihilate the
    range of the primal optimum; solving the resulting least squares for the
    multipliers and shifting S into the PSD cone yields a valid lower bound.
    The trivial pair (y, z) = 0 gives the floor value 0, always valid.
    """
    k = len(c)
    C = np.outer(c, c)
    evals, evecs = np.linalg.eigh(R)
    V = evecs[:, evals > rank_tol * max(1.0, float(evals[-1]))]
    r = V.shape[1]
    act = [(i, j) for i in range(k) for j in range(i + 1, k)
           if R[i, j] <= rho[i, j] + act_tol]
    na = len(act)
    A = np.zeros((k * r, k + na))
    b = (C @ V).reshape(-1)
    for i in range(k):
        A[i * r:(i + 1) * r, i] = V[i]
    for a, (i, j) in enumerate(act):
        A[i * r:(i + 1) * r, k + a] += V[j]
        A[j * r:(j + 1) * r, k + a] += V[i]
    lb = np.concatenate([np.full(k, -np.inf), np.zeros(na)])
    try:
        res = lsq_linear(A, b, bounds=(lb, np.full(k + na, np.inf)))
        y = res.x[:k]
        z = res.x[k:]
    except Exception:
        y = np.zeros(k)
        z = np.zeros(na)
    S = C - np.diag(y)
    for a, (i, j) in enumerate(act):
        S[i, j] -= z[a]
        S[j, i] -= z[a]
    lam = float(np.linalg.eigvalsh(S)[0])
    if lam < 0:
        y = y + lam
    value = float(np.sum(y)) + 2.0 * float(
        sum(z[a] * rho[i, j] for a, (i, j) in enumerate(act)))
    return max(value, 0.0)  # (y, z) = 0 is dual feasible since C is PSD


# ---------------------------------------------------------------- barrier fallback
def _barrier(c, rho, tol: float = 1e-9, margin: float = 1e-8):
    """Log-barrier path following on the correlation problem.

    Requires strict floors (max rho_ij < 1); returns (R, dual value).
    """
    k = len(c)
    C = np.outer(c, c)
    iu = np.triu_indices(k, 1)
    off_rho = rho[iu]
    if off_rho.size and float(np.max(off_rho)) >= 1.0 - margin:
        raise SolverError("barrier needs strictly interior floors")
    # strictly feasible start between the all-ones matrix and the identity
    s0 = 0.5 * float(np.min(1.0 - off_rho)) if off_rho.size else 0.5
    s0 = min(max(s0, 1e-6), 0.9)
    R = (1.0 - s0) * np.ones((k, k)) + s0 * np.eye(k)
    nvar = iu[0].size
    eta = max(1.0, k / max(float(c @ R @ c), 1e-12))
    n_ineq = nvar

    def assemble(x):
        M = np.eye(k)
        M[iu] = x
        M = M + M.T - np.eye(k)
        return M

    x = R[iu].copy()
    for _ in range(64):
        for _ in range(80):  # Newton iterations at fixed eta
            R = assemble(x)
            try:
                Rinv = np.linalg.inv(R)
            except np.linalg.LinAlgError:
                raise SolverError("barrier iterate left the PSD cone")
            slack = x - off_rho
            g = 2.0 * eta * C[iu] - 2.0 * Rinv[iu] - 1.0 / slack
            H = 2.0 * (Rinv[np.ix_(iu[0], iu[0])] * Rinv[np.ix_(iu[1], iu[1])]
                       + Rinv[np.ix_(iu[0], iu[1])] * Rinv[np.ix_(iu[1], iu[0])])
            H[np.diag_indices(nvar)] += 1.0 / slack ** 2
            try:
                step = np.linalg.solve(H, g)
            except np.linalg.LinAlgError:
                step = g / np.linalg.norm(H)
            # backtracking: stay PSD and strictly above the floors
            alpha = 1.0
            for _ in range(60):
                xn = x - alpha * step
                if np.all(xn - off_rho > 0):
                    Rn = assemble(xn)
                    try:
                        np.linalg.cholesky(Rn + 1e-14 * np.eye(k))
                        break
                    except np.linalg.LinAlgError:
                        pass
                alpha *= 0.5
            else:
                alpha = 0.0
            if alpha == 0.0:
                break
            x = x - alpha * step
            decrement = float(g @ step) * alpha
            if abs(decrement) < 1e-13:
                break
        if n_ineq / eta < tol:
            break
        eta *= 10.0
    R = assemble(x)
    # implicit dual point at the central path: z = 1/(2 eta slack), S = Rinv/eta
    slack = x - off_rho
    z = 1.0 / (2.0 * eta * slack)
    Rinv = np.linalg.inv(R)
    y = C.diagonal() - Rinv.diagonal() / eta
    S = C - np.diag(y)
    S[iu] -= z
    S.T[iu] -= z
    lam = float(np.linalg.eigvalsh(S)[0])
    if lam < 0:
        y = y + lam
    dual = float(np.sum(y)) + 2.0 * float(np.sum(z * off_rho))
    return R, max(dual, 0.0)


# ---------------------------------------------------------------- public entry
def delta_sdp(profile: DistanceProfile, weights, tol: float = 1e-7,
              max_iter: int = 100000, gap_tol: float = None) -> DeltaResult:
    """Solve the realization program; value is delta of the profile in [0, 1].

    The result carries the optimal Gram witness and solver diagnostics
    including the certified duality gap (relative to the denominator).
    """
    weights = np.asarray(weights, float)
    if weights.shape[0] != profile.size:
        raise ValueError("weights length must match profile size")
    if gap_tol is None:
        gap_tol = 10.0 * tol
    c, rho, denom, keep = _reduce(profile, weights)
    k = len(c)
    if k == 1:
        R = np.ones((1, 1))
        value = float(c[0] ** 2) / denom
        witness = _expand_witness(profile, R, keep)
        return DeltaResult(value, witness, {
            "method": "closed-form", "iterations": 0, "duality_gap": 0.0,
            "certified": True, "reduced_size": 1})
    Z, info = _admm(c, rho, tol=min(tol, 1e-9), max_iter=max_iter)
    if info["primal_residual"] > 1e-6 or info["dual_residual"] > 1e-6:
        raise SolverError("splitting solver failed to converge", info)
    primal = float(c @ Z @ c)
    dual = _dual_lower_bound(c, rho, Z)
    gap = (primal - dual) / denom
    method = "admm"
    if gap > gap_tol:
        try:
            Rb, dual_b = _barrier(c, rho)
            primal_b = float(c @ Rb @ c)
            if primal_b < primal:
                Z, primal = Rb, primal_b
            dual = max(dual, dual_b)
            gap = (primal - dual) / denom
            method = "admm+barrier"
        except SolverError:
            method = "admm (barrier unavailable)"
    value = primal / denom
    value = min(max(value, 0.0), 1.0)
    witness = _expand_witness(profile, Z, keep)
    diagnostics = {
        "method": method,
        "iterations": info["iterations"],
        "primal_residual": info["primal_residual"],
        "dual_residual": info["dual_residual"],
        "duality_gap": gap,
        "certified": bool(gap <= gap_tol),
        "reduced_size": k,
        "denominator": denom,
    }
    return DeltaResult(value, witness, diagnostics)
