"""Feasibility check for explicit realization vectors."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .profile import DistanceProfile


@dataclass
class RealizationReport:
    passed: bool
    norm_residual: float       # worst | ||phi_i|| - d_i |
    lipschitz_residual: float  # worst ||phi_i - phi_j|| - D_ij (positive part)

    def to_json(self) -> dict:
        return {"passed": self.passed, "norm_residual": self.norm_residual,
                "lipschitz_residual": self.lipschitz_residual}


def realization_check(profile: DistanceProfile, vectors, tol: float = 1e-8) -> RealizationReport:
    """Verify the two realization conditions: pinned norms ||phi_i|| = d_i and
    the Lipschitz bounds ||phi_i - phi_j|| <= D_ij."""
    V = np.array(vectors, dtype=float)
    if V.shape[0] != profile.size:
        raise ValueError("vector count must match profile size")
    norms = np.linalg.norm(V, axis=1)
    norm_res = float(np.max(np.abs(norms - profile.radial)))
    diff = np.linalg.norm(V[:, None, :] - V[None, :, :], axis=2)
    lip = diff - profile.pairwise
    np.fill_diagonal(lip, 0.0)
    lip_res = float(np.max(lip))
    return RealizationReport(passed=(norm_res <= tol and lip_res <= tol),
                             norm_residual=norm_res, lipschitz_residual=max(lip_res, 0.0))
