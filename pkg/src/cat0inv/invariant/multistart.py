"""Independent cross-check of the realization program.

Works directly with explicit realization vectors phi_i in R^m (vectors of the
support size always suffice): unit vectors u_i = phi_i / d_i with the norm
pinning as equality constraints and the Lipschitz floors u_i . u_j >= rho_ij
as inequalities, solved by SQP from several starts.  With the factorization
rank equal to the support size the landscape carries no spurious strict local
minima in practice; every start converges to the same optimum on the model
instances.  The best feasible value over all starts is an upper bound on
delta and must agree with the SDP at optimality.
"""
from __future__ import annotations

import numpy as np
from scipy.optimize import minimize

from .profile import DistanceProfile
from .sdp import _reduce


def _solve_from(c, rho, U0, max_iter=400):
    """One SQP descent; returns (objective, worst floor violation, frame)."""
    k = len(c)
    iu = np.triu_indices(k, 1)
    rho_flat = rho[iu]

    def obj(x):
        U = x.reshape(k, k)
        s = c @ U
        return float(s @ s)

    def obj_grad(x):
        U = x.reshape(k, k)
        return (2.0 * np.outer(c, c @ U)).reshape(-1)

    def norms(x):
        U = x.reshape(k, k)
        return np.sum(U * U, axis=1) - 1.0

    def norms_jac(x):
        U = x.reshape(k, k)
        J = np.zeros((k, k * k))
        for i in range(k):
            J[i, i * k:(i + 1) * k] = 2.0 * U[i]
        return J

    def floors(x):
        U = x.reshape(k, k)
        return (U @ U.T)[iu] - rho_flat

    def floors_jac(x):
        U = x.reshape(k, k)
        J = np.zeros((len(rho_flat), k * k))
        for a, (i, j) in enumerate(zip(*iu)):
            J[a, i * k:(i + 1) * k] = U[j]
            J[a, j * k:(j + 1) * k] = U[i]
        return J

    res = minimize(obj, U0.reshape(-1), jac=obj_grad, method="SLSQP",
                   constraints=[{"type": "eq", "fun": norms, "jac": norms_jac},
                                {"type": "ineq", "fun": floors, "jac": floors_jac}],
                   options={"maxiter": max_iter, "ftol": 1e-14})
    U = res.x.reshape(k, k)
    U /= np.maximum(np.linalg.norm(U, axis=1, keepdims=True), 1e-12)
    viol = float(np.max(np.maximum(0.0, rho_flat - (U @ U.T)[iu])))
    return float(np.sum((c @ U) ** 2)), viol, U


def delta_multistart(profile: DistanceProfile, weights, num_starts: int = 8,
                     seed: int = 0, feas_tol: float = 1e-7):
    """Best feasible Rayleigh quotient over explicit realizations.

    Starts: the PSD projection of the all-floors-tight Gram (exact for
    Euclidean-type profiles), the one-ray realization (feasible by the
    triangle inequality), and seeded random frames.  Returns the best value
    found; always an upper bound on delta of the profile.
    """
    weights = np.asarray(weights, float)
    c, rho, denom, keep = _reduce(profile, weights)
    k = len(c)
    if k == 1:
        return float(c[0] ** 2) / denom
    rng = np.random.default_rng(seed)
    starts = []
    evals, evecs = np.linalg.eigh(rho)
    pos = evals > 0
    U0 = evecs[:, pos] * np.sqrt(evals[pos])
    if U0.shape[1] < k:
        U0 = np.hstack([U0, np.zeros((k, k - U0.shape[1]))])
    starts.append(U0 / np.maximum(np.linalg.norm(U0, axis=1, keepdims=True), 1e-12))
    starts.append(np.ones((k, k)) / np.sqrt(k))
    for _ in range(max(0, num_starts - 2)):
        U = rng.normal(size=(k, k))
        starts.append(U / np.linalg.norm(U, axis=1, keepdims=True))
    best = np.inf
    for U0 in starts:
        val, viol, _ = _solve_from(c, rho, U0)
        if viol <= feas_tol and val < best:
            best = val
    if not np.isfinite(best):
        best = float(np.sum(c) ** 2)  # the one-ray value, feasible by construction
    return best / denom
