"""Geodesic segments with unit-interval parametrization."""
from __future__ import annotations


class GeodesicSegment:
    """Constant-speed parametrization [0, 1] -> space of the segment p -> q.

    Satisfies d(eval(s), eval(t)) = |s - t| * d(p, q).
    """

    def __init__(self, space, p, q):
        self.space = space
        self.p = space.canonical(p)
        self.q = space.canonical(q)
        self.length = space.distance(p, q)
        self._eval = space.geodesic_eval(self.p, self.q)

    def eval(self, t: float):
        if t < -1e-12 or t > 1 + 1e-12:
            raise ValueError(f"parameter {t} outside [0, 1]")
        return self._eval(min(max(t, 0.0), 1.0))

    def midpoint(self):
        return self.eval(0.5)

    def __repr__(self):
        return f"GeodesicSegment(length={self.length:.6g})"


def distance(space, p, q) -> float:
    """Distance between two points of a model space."""
    return space.distance(p, q)


def geodesic(space, p, q) -> GeodesicSegment:
    """The geodesic segment from p to q in a model space."""
    return GeodesicSegment(space, p, q)


def scale_cone_point(cone, p, c: float):
    """Radial scaling v -> cv on a Euclidean cone; satisfies d(cv, cw) = c d(v, w)."""
    return cone.scale_point(p, c)
