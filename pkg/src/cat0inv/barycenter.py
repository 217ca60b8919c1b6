"""Barycenters of finitely supported measures, certified by the variance inequality.

The barycenter of mu = sum t_i Dirac(p_i) minimizes F(y) = sum t_i d(y, p_i)^2.
Euclidean spaces use the weighted mean, products work factor by factor, trees
use exact subgradient routing (F restricted to any edge is a single quadratic),
and cones search the candidate set {origin} union {rays} with a closed-form
1-d minimum per ray.  Cone results are certified or an error is raised: a cone
over an arbitrary finite base need not be globally CAT(0), and the variance
inequality is the operative test.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .spaces import (ConePoint, EuclideanCone, EuclideanSpace, GeodesicSegment,
                     MetricTree, ProductSpace, space_from_json)


class UncertifiedBarycenterError(RuntimeError):
    """Raised when a cone barycenter candidate fails certification."""

    def __init__(self, message, candidate, report):
        super().__init__(message)
        self.candidate = candidate
        self.report = report


@dataclass(frozen=True)
class SupportedMeasure:
    """Finitely supported probability measure sum t_i Dirac(p_i) on a model space."""
    space: object
    points: tuple
    weights: np.ndarray

    def __init__(self, space, points, weights, tol: float = 1e-12):
        points = tuple(space.canonical(p) for p in points)
        weights = np.array(weights, dtype=float)
        if len(points) != len(weights) or len(points) == 0:
            raise ValueError("need matching, nonempty points and weights")
        if np.any(weights <= 0):
            raise ValueError("weights must be positive")
        if abs(float(weights.sum()) - 1.0) > tol:
            raise ValueError(f"weights sum to {weights.sum()}, not 1")
        weights.setflags(write=False)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self) -> int:
        return len(self.points)

    def distinct_support_count(self, tol: float = 1e-12) -> int:
        count = 0
        kept = []
        for p in self.points:
            if not any(self.space.points_equal(p, q, tol) for q in kept):
                kept.append(p)
                count += 1
        return count

    def squared_dispersion(self, y) -> float:
        """F(y) = sum t_i d(y, p_i)^2."""
        return float(sum(w * self.space.distance(y, p) ** 2
                         for w, p in zip(self.weights, self.points)))

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "space": self.space.to_json(),
            "points": [self.space.point_to_json(p) for p in self.points],
            "weights": [float(w) for w in self.weights],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SupportedMeasure":
        space = space_from_json(data["space"])
        points = [space.point_from_json(p) for p in data["points"]]
        return cls(space, points, data["weights"])

    @classmethod
    def load(cls, path) -> "SupportedMeasure":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


# ---------------------------------------------------------------- barycenters
def _euclidean_barycenter(measure):
    pts = np.stack([measure.space.canonical(p) for p in measure.points])
    return measure.weights @ pts


def _tree_barycenter(tree: MetricTree, measure):
    """Subgradient routing: descend from the best vertex along the unique
    negative direction until the minimizing edge's interior quadratic or a
    stationary vertex is reached."""

    def edge_quadratic(k):
        # F on edge k as A s^2 + B s + C, s = offset from endpoint u
        u, v, l = tree.edges[k]
        A = float(measure.weights.sum())
        B = 0.0
        C = 0.0
        for w, p in zip(measure.weights, measure.points):
            if not p.is_vertex and p.edge == k:
                B += -2.0 * w * p.offset
                C += w * p.offset ** 2
                continue
            du = tree.distance(tree.point(vertex=u), p)
            dv = tree.distance(tree.point(vertex=v), p)
            if du <= dv:   # reached through u
                B += 2.0 * w * du
                C += w * du * du
            else:          # reached through v
                B += -2.0 * w * (dv + l)
                C += w * (dv + l) ** 2
        return A, B, C

    # start from the best support-adjacent vertex
    fvals = [measure.squared_dispersion(tree.point(vertex=x))
             for x in range(tree.num_vertices)]
    current = int(np.argmin(fvals))
    visited = set()
    while True:
        visited.add(current)
        best_step = None
        for nb, k in tree.adjacency[current]:
            u, v, l = tree.edges[k]
            A, B, C = edge_quadratic(k)
            # one-sided derivative at the current vertex, walking toward nb
            deriv = B if current == u else -(2.0 * A * l + B)
            if deriv < -1e-12 and (best_step is None or deriv < best_step[0]):
                best_step = (deriv, nb, k, A, B, l, u)
        if best_step is None:
            return tree.point(vertex=current)
        _, nb, k, A, B, l, u = best_step
        s = -B / (2.0 * A)
        s_local = s if current == u else l - s  # offset from current along the edge
        if 1e-12 < s < l - 1e-12:
            return tree.point(edge=k, offset=s)
        if nb in visited:   # numerical tie; settle for the better endpoint
            return tree.point(vertex=min(current, nb, key=lambda x: fvals[x]))
        current = nb


def _cone_barycenter_candidate(cone: EuclideanCone, measure):
    """Best point over {origin}, all rays, and arc directions between base
    points: along the ray through direction w, F(s) = s^2 - 2 s M(w) + const
    with M(w) = sum t_i r_i cos(angle(w, dir_i)), so minimizing F means
    maximizing max(0, M) over the direction space."""
    support = [(w, p) for w, p in zip(measure.weights, measure.points)
               if not p.is_origin]
    const = float(sum(w * p.radius ** 2 for w, p in zip(measure.weights,
                                                        measure.points)))

    def moment(direction):
        return sum(w * p.radius * math.cos(cone.angle(direction, p.direction))
                   for w, p in support)

    best = (0.0, cone.origin)
    for x in range(cone.base.size):
        M = moment(x)
        if M > best[0] + 1e-15:
            best = (M, cone.point(x, M))
    # arc directions: support-direction pairs always, all base pairs at desk scale
    pairs = set()
    sup_dirs = sorted({p.direction for _, p in support
                       if isinstance(p.direction, int)})
    for a in range(len(sup_dirs)):
        for b in range(a + 1, len(sup_dirs)):
            pairs.add((sup_dirs[a], sup_dirs[b]))
    if cone.base.size <= 10:
        pairs.update((i, j) for i in range(cone.base.size)
                     for j in range(i + 1, cone.base.size))
    for i, j in pairs:
        theta = cone.arc_length(i, j)
        if theta <= 1e-12:
            continue
        grid = np.linspace(0.0, theta, 33)
        vals = [moment(cone._arc_dir(i, j, float(b))) for b in grid]
        kbest = int(np.argmax(vals))
        lo = grid[max(kbest - 1, 0)]
        hi = grid[min(kbest + 1, len(grid) - 1)]
        # golden-section polish on the bracketing interval
        gr = (math.sqrt(5.0) - 1.0) / 2.0
        a_, b_ = lo, hi
        c_ = b_ - gr * (b_ - a_)
        d_ = a_ + gr * (b_ - a_)
        fc = moment(cone._arc_dir(i, j, c_))
        fd = moment(cone._arc_dir(i, j, d_))
        for _ in range(40):
            if fc > fd:
                b_, d_, fd = d_, c_, fc
                c_ = b_ - gr * (b_ - a_)
                fc = moment(cone._arc_dir(i, j, c_))
            else:
                a_, c_, fc = c_, d_, fd
                d_ = a_ + gr * (b_ - a_)
                fd = moment(cone._arc_dir(i, j, d_))
        beta, M = (c_, fc) if fc > fd else (d_, fd)
        if M > best[0] + 1e-15:
            best = (M, cone.point(cone._arc_dir(i, j, float(beta)), M))
    return best[1]


def barycenter(measure: SupportedMeasure, certify_tol: float = 1e-8,
               num_probes: int = 256, seed: int = 0):
    """The point minimizing y -> sum t_i d(y, p_i)^2.

    Cone barycenters (and products involving cones) are certified via
    certify_barycenter; failure raises UncertifiedBarycenterError.
    """
    space = measure.space
    if isinstance(space, EuclideanSpace):
        return _euclidean_barycenter(measure)
    if isinstance(space, MetricTree):
        return _tree_barycenter(space, measure)
    if isinstance(space, ProductSpace):
        parts = []
        for f_idx, factor in enumerate(space.factors):
            sub = SupportedMeasure(factor, [p[f_idx] for p in measure.points],
                                   measure.weights)
            parts.append(barycenter(sub, certify_tol, num_probes, seed))
        return tuple(parts)
    if isinstance(space, EuclideanCone):
        cand = _cone_barycenter_candidate(space, measure)
        report = certify_barycenter(measure, cand, tol=certify_tol,
                                    num_probes=num_probes, seed=seed)
        if not report.passed:
            raise UncertifiedBarycenterError(
                f"cone barycenter candidate failed certification "
                f"(worst gap {report.worst_gap:.3e})", cand, report)
        return cand
    raise ValueError(f"unsupported space {space!r}")


# ---------------------------------------------------------------- certification
def variance_gap(measure: SupportedMeasure, y, bar=None) -> float:
    """sum t_i (d(y,p_i)^2 - d(bar,p_i)^2) - d(bar,y)^2; nonnegative whenever
    bar is the true barycenter of a measure on a CAT(0) space."""
    if bar is None:
        bar = barycenter(measure)
    return (measure.squared_dispersion(y) - measure.squared_dispersion(bar)
            - measure.space.distance(bar, y) ** 2)


@dataclass
class CertificationReport:
    passed: bool
    worst_gap: float
    worst_probe: object = None
    directional_min: float = 0.0
    num_probes: int = 0

    def to_json(self) -> dict:
        return {"passed": self.passed, "worst_gap": self.worst_gap,
                "directional_min": self.directional_min, "num_probes": self.num_probes}


def certify_barycenter(measure: SupportedMeasure, candidate, tol: float = 1e-8,
                       num_probes: int = 256, seed: int = 0) -> CertificationReport:
    """Check the variance inequality at probe points and one-sided directional
    derivatives along geodesics leaving the candidate."""
    space = measure.space
    candidate = space.canonical(candidate)
    f_cand = measure.squared_dispersion(candidate)
    scale = max(1.0, max(space.distance(candidate, p) for p in measure.points))

    probes = list(measure.points)
    for i in range(len(measure.points)):
        for j in range(i + 1, min(len(measure.points), i + 4)):
            probes.append(GeodesicSegment(space, measure.points[i],
                                          measure.points[j]).midpoint())
    rng = np.random.default_rng(seed)
    while len(probes) < num_probes:
        probes.append(space.random_point(rng, scale))

    worst = math.inf
    worst_probe = None
    for y in probes:
        gap = (measure.squared_dispersion(y) - f_cand
               - space.distance(candidate, y) ** 2)
        if gap < worst:
            worst, worst_probe = gap, y
    # one-sided derivatives toward support points and a few random targets
    dmin = math.inf
    eps = 1e-6 * scale
    targets = list(measure.points) + [space.random_point(rng, scale) for _ in range(8)]
    for y in targets:
        d = space.distance(candidate, y)
        if d <= eps:
            continue
        seg = GeodesicSegment(space, candidate, y)
        step = measure.squared_dispersion(seg.eval(eps / d)) - f_cand
        dmin = min(dmin, step / eps)
    if dmin is math.inf:
        dmin = 0.0
    tol_scaled = tol * scale * scale
    passed = worst >= -tol_scaled and dmin >= -tol_scaled
    return CertificationReport(passed=passed, worst_gap=float(worst),
                               worst_probe=worst_probe, directional_min=float(dmin),
                               num_probes=len(probes))
