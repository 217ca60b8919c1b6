"""Sampled thin-triangle validation against flat comparison triangles."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geodesic import GeodesicSegment


@dataclass
class CatZeroReport:
    checks: int
    tol: float
    violations: list = field(default_factory=list)
    max_excess: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "checks": self.checks,
            "tol": self.tol,
            "num_violations": len(self.violations),
            "max_excess": self.max_excess,
            "violations": self.violations[:50],
        }


def _comparison_coords(a: float, b: float, c: float):
    """Plane coordinates of a triangle with side lengths |pq|=a, |qr|=b, |rp|=c."""
    x = (a * a + c * c - b * b) / (2.0 * a) if a > 0 else 0.0
    y2 = c * c - x * x
    return np.array([0.0, 0.0]), np.array([a, 0.0]), np.array([x, math.sqrt(max(0.0, y2))])


def verify_cat0_sample(space, num_quadruples: int = 200, seed: int = 0,
                       tol: float = 1e-9, scale: float = 1.0) -> CatZeroReport:
    """Sample geodesic triangles and check them against comparison triangles.

    For each sampled triangle and parameter pair (s, t) on two sides, asserts
    d(gamma_i(s), gamma_j(t)) <= comparison distance + tol.  Violations are
    reported as data, not raised.
    """
    rng = np.random.default_rng(seed)
    report = CatZeroReport(checks=0, tol=tol)
    for _ in range(num_quadruples):
        pts = [space.random_point(rng, scale) for _ in range(3)]
        if min(space.distance(pts[0], pts[1]), space.distance(pts[1], pts[2]),
               space.distance(pts[2], pts[0])) <= 1e-9:
            continue
        p, q, r = pts
        sides = [GeodesicSegment(space, p, q), GeodesicSegment(space, q, r),
                 GeodesicSegment(space, r, p)]
        bar_p, bar_q, bar_r = _comparison_coords(sides[0].length, sides[1].length,
                                                 sides[2].length)
        ends = [(bar_p, bar_q), (bar_q, bar_r), (bar_r, bar_p)]
        i = int(rng.integers(0, 3))
        j = int(rng.integers(0, 3))
        s = float(rng.uniform())
        t = float(rng.uniform())
        x = sides[i].eval(s)
        y = sides[j].eval(t)
        bx = (1 - s) * ends[i][0] + s * ends[i][1]
        by = (1 - t) * ends[j][0] + t * ends[j][1]
        d_space = space.distance(x, y)
        d_flat = float(np.linalg.norm(bx - by))
        report.checks += 1
        excess = d_space - d_flat - tol
        if excess > 0:
            report.max_excess = max(report.max_excess, d_space - d_flat)
            report.violations.append({
                "sides": (i, j), "params": (s, t),
                "space_distance": d_space, "comparison_distance": d_flat,
            })
    return report
