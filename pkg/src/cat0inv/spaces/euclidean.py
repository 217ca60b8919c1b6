"""Euclidean space R^n."""
from __future__ import annotations

import numpy as np


class EuclideanSpace:
    kind = "euclidean"

    def __init__(self, dimension: int):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        self.dimension = int(dimension)

    def canonical(self, p):
        q = np.array(p, dtype=float).reshape(-1)
        if q.shape[0] != self.dimension:
            raise ValueError(f"point has dimension {q.shape[0]}, space has {self.dimension}")
        if not np.all(np.isfinite(q)):
            raise ValueError("point coordinates must be finite")
        return q

    def distance(self, p, q) -> float:
        return float(np.linalg.norm(self.canonical(p) - self.canonical(q)))

    def points_equal(self, p, q, tol: float = 1e-12) -> bool:
        return self.distance(p, q) <= tol

    def geodesic_eval(self, p, q):
        p = self.canonical(p)
        q = self.canonical(q)
        return lambda t: p + t * (q - p)

    def random_point(self, rng, scale: float = 1.0):
        return rng.normal(scale=scale, size=self.dimension)

    def point_to_json(self, p):
        return [float(x) for x in self.canonical(p)]

    def point_from_json(self, data):
        return self.canonical(data)

    def to_json(self) -> dict:
        return {"schema": 1, "kind": "euclidean", "dimension": self.dimension}

    def __repr__(self):
        return f"EuclideanSpace({self.dimension})"
