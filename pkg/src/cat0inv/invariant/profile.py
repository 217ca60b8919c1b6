"""Distance profiles: the exact data the realization program depends on."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..barycenter import SupportedMeasure, barycenter


@dataclass(frozen=True)
class DistanceProfile:
    """Pairwise support distances plus distances to the barycenter.

    Realizations are constrained only through these numbers, so two measures
    with equal weights and equal profiles have the same invariant.
    """
    pairwise: np.ndarray   # (m, m) support distances
    radial: np.ndarray     # (m,) distances to the barycenter

    def __init__(self, pairwise, radial, tol: float = 1e-8):
        pairwise = np.array(pairwise, dtype=float)
        radial = np.array(radial, dtype=float)
        m = radial.shape[0]
        if pairwise.shape != (m, m):
            raise ValueError("pairwise matrix shape must match radial length")
        if np.any(radial < -tol):
            raise ValueError("radial distances must be nonnegative")
        if np.any(np.abs(pairwise - pairwise.T) > tol) or np.any(np.abs(np.diag(pairwise)) > tol):
            raise ValueError("pairwise must be symmetric with zero diagonal")
        # metric triangle inequality on the support
        for j in range(m):
            if np.min(pairwise[:, None, j] + pairwise[None, j, :] - pairwise) < -tol:
                raise ValueError("pairwise distances violate the triangle inequality")
        # triangle inequality through the barycenter
        lo = np.abs(radial[:, None] - radial[None, :])
        hi = radial[:, None] + radial[None, :]
        if np.any(pairwise < lo - tol) or np.any(pairwise > hi + tol):
            raise ValueError("pairwise/radial data violate the barycenter triangle inequality")
        pairwise = 0.5 * (pairwise + pairwise.T)
        np.fill_diagonal(pairwise, 0.0)
        radial = np.maximum(radial, 0.0)
        pairwise.setflags(write=False)
        radial.setflags(write=False)
        object.__setattr__(self, "pairwise", pairwise)
        object.__setattr__(self, "radial", radial)

    @property
    def size(self) -> int:
        return self.radial.shape[0]

    def scaled(self, c: float) -> "DistanceProfile":
        if c <= 0:
            raise ValueError("scale must be positive")
        return DistanceProfile(self.pairwise * c, self.radial * c)

    def to_json(self) -> dict:
        return {"schema": 1, "pairwise": self.pairwise.tolist(),
                "radial": self.radial.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "DistanceProfile":
        return cls(np.array(data["pairwise"]), np.array(data["radial"]))


def distance_profile(measure: SupportedMeasure, bar=None) -> DistanceProfile:
    """Exact profile of a measure; computes (and for cones certifies) the
    barycenter unless one is supplied."""
    if measure.distinct_support_count() < 2:
        raise ValueError("profiles need at least two distinct support points")
    if bar is None:
        bar = barycenter(measure)
    space = measure.space
    m = measure.size
    pw = np.zeros((m, m))
    for i in range(m):
        for j in range(i + 1, m):
            pw[i, j] = pw[j, i] = space.distance(measure.points[i], measure.points[j])
    rad = np.array([space.distance(p, bar) for p in measure.points])
    return DistanceProfile(pw, rad)
