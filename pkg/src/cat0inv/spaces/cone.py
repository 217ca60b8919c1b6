"""Euclidean cones over finite metric spaces.

Points are pairs (base direction, radius >= 0); all zero-radius points are
identified as the origin O. The distance between (x, t) and (y, s) is

    sqrt(t^2 + s^2 - 2 t s cos(min(pi, d_X(x, y)))).

Geodesics between points whose directions subtend an angle < pi run through a
flat sector obtained by unrolling the two rays into the plane.  Interior
points of that sector do not sit over base points; they are represented as
"arc" directions: positions along a virtual arc of length min(pi, d_X(i, j))
glued between base points i and j.  The angle between two arbitrary
directions is the shortest route through this arc system (capped at pi),
which extends the capped base metric consistently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from .finite_metric import FiniteMetricSpace

_ARC_TOL = 1e-12


@dataclass(frozen=True)
class ArcDirection:
    """Direction at angular offset beta along the virtual arc from base i to j."""
    i: int
    j: int
    beta: float


Direction = Union[int, ArcDirection]


@dataclass(frozen=True)
class ConePoint:
    direction: Optional[Direction]  # None encodes the origin
    radius: float

    @property
    def is_origin(self) -> bool:
        return self.direction is None


class EuclideanCone:
    kind = "cone"

    def __init__(self, base: FiniteMetricSpace):
        if not isinstance(base, FiniteMetricSpace):
            base = FiniteMetricSpace(base)
        self.base = base
        self.origin = ConePoint(direction=None, radius=0.0)

    # ------------------------------------------------------------- directions
    def arc_length(self, i: int, j: int) -> float:
        return min(math.pi, self.base.d(i, j))

    def _arc_dir(self, i: int, j: int, beta: float) -> Direction:
        """Canonical direction on the arc i -> j at offset beta from i."""
        theta = self.arc_length(i, j)
        if beta <= _ARC_TOL:
            return int(i)
        if beta >= theta - _ARC_TOL:
            return int(j)
        if i > j:
            i, j, beta = j, i, theta - beta
        return ArcDirection(int(i), int(j), float(beta))

    def canonical_direction(self, d: Direction) -> Direction:
        if isinstance(d, ArcDirection):
            return self._arc_dir(d.i, d.j, d.beta)
        d = int(d)
        if not 0 <= d < self.base.size:
            raise ValueError(f"base direction {d} out of range")
        return d

    def _exits(self, d: Direction):
        """(base point, angular cost to reach it) for each way off a direction."""
        if isinstance(d, ArcDirection):
            theta = self.arc_length(d.i, d.j)
            return [(d.i, d.beta), (d.j, theta - d.beta)]
        return [(int(d), 0.0)]

    def angle(self, d1: Direction, d2: Direction) -> float:
        """Angle between two directions: shortest arc-system route, capped at pi."""
        d1 = self.canonical_direction(d1)
        d2 = self.canonical_direction(d2)
        if d1 == d2:
            return 0.0
        if (isinstance(d1, ArcDirection) and isinstance(d2, ArcDirection)
                and (d1.i, d1.j) == (d2.i, d2.j)):
            return abs(d1.beta - d2.beta)
        best = math.inf
        for a, ca in self._exits(d1):
            for b, cb in self._exits(d2):
                best = min(best, ca + self.arc_length(a, b) + cb)
        return min(math.pi, best)

    def _route(self, d1: Direction, d2: Direction):
        """Piecewise description of a shortest angular route d1 -> d2.

        Returns (total angle, segments); each segment is (length, mapper)
        with mapper taking a local offset in [0, length] to a Direction.
        """
        d1 = self.canonical_direction(d1)
        d2 = self.canonical_direction(d2)
        if d1 == d2:
            return 0.0, []
        if (isinstance(d1, ArcDirection) and isinstance(d2, ArcDirection)
                and (d1.i, d1.j) == (d2.i, d2.j)):
            i, j = d1.i, d1.j
            b1, b2 = d1.beta, d2.beta
            sgn = 1.0 if b2 >= b1 else -1.0
            return abs(b2 - b1), [(abs(b2 - b1),
                                   lambda u, i=i, j=j, b1=b1, sgn=sgn: self._arc_dir(i, j, b1 + sgn * u))]
        best = None
        for a, ca in self._exits(d1):
            for b, cb in self._exits(d2):
                tot = ca + self.arc_length(a, b) + cb
                if best is None or tot < best[0]:
                    best = (tot, a, ca, b, cb)
        tot, a, ca, b, cb = best
        segs = []
        if isinstance(d1, ArcDirection) and ca > _ARC_TOL:
            i, j, b1 = d1.i, d1.j, d1.beta
            sgn = -1.0 if a == i else 1.0
            segs.append((ca, lambda u, i=i, j=j, b1=b1, sgn=sgn: self._arc_dir(i, j, b1 + sgn * u)))
        mid = self.arc_length(a, b)
        if mid > _ARC_TOL:
            segs.append((mid, lambda u, a=a, b=b: self._arc_dir(a, b, u)))
        if isinstance(d2, ArcDirection) and cb > _ARC_TOL:
            i, j = d2.i, d2.j
            sgn = 1.0 if b == i else -1.0
            start = 0.0 if b == i else self.arc_length(i, j)
            segs.append((cb, lambda u, i=i, j=j, start=start, sgn=sgn:
                         self._arc_dir(i, j, start + sgn * u)))
        return tot, segs

    def _route_at(self, segs, offset: float) -> Direction:
        acc = 0.0
        for length, mapper in segs:
            if offset <= acc + length + _ARC_TOL:
                return mapper(min(max(offset - acc, 0.0), length))
            acc += length
        length, mapper = segs[-1]
        return mapper(length)

    # ------------------------------------------------------------- points
    def point(self, direction: Optional[Direction], radius: float) -> ConePoint:
        if radius < -_ARC_TOL:
            raise ValueError("radius must be nonnegative")
        if radius <= _ARC_TOL or direction is None:
            if radius > _ARC_TOL:
                raise ValueError("nonzero radius needs a direction")
            return self.origin
        return ConePoint(self.canonical_direction(direction), float(radius))

    def canonical(self, p: ConePoint) -> ConePoint:
        if not isinstance(p, ConePoint):
            raise ValueError("cone points must be ConePoint instances")
        return self.point(p.direction, p.radius)

    def distance(self, p: ConePoint, q: ConePoint) -> float:
        p = self.canonical(p)
        q = self.canonical(q)
        if p.is_origin:
            return q.radius
        if q.is_origin:
            return p.radius
        ang = self.angle(p.direction, q.direction)
        d2 = p.radius ** 2 + q.radius ** 2 - 2.0 * p.radius * q.radius * math.cos(ang)
        return math.sqrt(max(0.0, d2))

    def points_equal(self, p, q, tol: float = 1e-12) -> bool:
        return self.distance(p, q) <= tol

    def scale_point(self, p: ConePoint, c: float) -> ConePoint:
        if c <= 0:
            raise ValueError("scale factor must be positive")
        p = self.canonical(p)
        if p.is_origin:
            return self.origin
        return ConePoint(p.direction, c * p.radius)

    def geodesic_eval(self, p, q):
        p = self.canonical(p)
        q = self.canonical(q)
        if p.is_origin and q.is_origin:
            return lambda t: self.origin
        if p.is_origin:
            return lambda t: self.point(q.direction, t * q.radius)
        if q.is_origin:
            return lambda t: self.point(p.direction, (1.0 - t) * p.radius)
        psi = self.angle(p.direction, q.direction)
        if psi >= math.pi - 1e-12:
            # antipodal directions: the segment runs through the origin
            total = p.radius + q.radius

            def ev_origin(t: float):
                s = t * total
                if s <= p.radius:
                    return self.point(p.direction, p.radius - s)
                return self.point(q.direction, s - p.radius)

            return ev_origin
        total_route, segs = self._route(p.direction, q.direction)
        a = np.array([p.radius, 0.0])
        b = np.array([q.radius * math.cos(psi), q.radius * math.sin(psi)])

        def ev(t: float):
            w = (1.0 - t) * a + t * b
            r = float(np.hypot(w[0], w[1]))
            if r <= _ARC_TOL:
                return self.origin
            beta = math.atan2(w[1], w[0])
            beta = min(max(beta, 0.0), psi)
            if psi <= _ARC_TOL or not segs:
                return self.point(p.direction, r)
            return self.point(self._route_at(segs, beta), r)

        return ev

    def random_point(self, rng, scale: float = 1.0) -> ConePoint:
        i = int(rng.integers(0, self.base.size))
        return self.point(i, float(rng.uniform(0.0, scale)))

    # ------------------------------------------------------------- io
    def point_to_json(self, p: ConePoint):
        p = self.canonical(p)
        if p.is_origin:
            return {"origin": True}
        if isinstance(p.direction, ArcDirection):
            raise ValueError("arc points are internal and not serializable")
        return {"direction": p.direction, "radius": p.radius}

    def point_from_json(self, data) -> ConePoint:
        if data.get("origin"):
            return self.origin
        return self.point(int(data["direction"]), float(data["radius"]))

    def to_json(self) -> dict:
        return {"schema": 1, "kind": "cone", "base": self.base.to_json()}

    def __repr__(self):
        return f"EuclideanCone(base_size={self.base.size})"
