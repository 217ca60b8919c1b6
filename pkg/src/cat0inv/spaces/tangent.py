"""Tangent cones of metric trees: cones over the discrete space of directions."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cone import ConePoint, EuclideanCone
from .finite_metric import FiniteMetricSpace
from .geodesic import GeodesicSegment
from .tree import MetricTree, TreePoint


@dataclass
class TreeTangentCone:
    """Tangent cone of a metric tree at a point.

    The base is one point per direction germ at p, any two distinct tree
    directions subtending the angle pi.  Each direction keeps a representative
    geodesic (toward the farthest point with that germ) so that cone points
    can be mapped back into the tree.
    """
    tree: MetricTree
    point: TreePoint
    cone: EuclideanCone
    direction_ids: list         # germ ids, aligned with base indices
    representatives: list       # TreePoint realizing each germ
    lengths: list               # geodesic length available along each germ

    def log_map(self, q: TreePoint) -> ConePoint:
        """pi_p(q) = (direction of q, d(p, q)); 1-Lipschitz into the cone."""
        r = self.tree.distance(self.point, q)
        if r <= 1e-15:
            return self.cone.origin
        germ = self.tree.direction_at(self.point, q)
        idx = self.direction_ids.index(germ)
        return self.cone.point(idx, r)

    def point_along(self, direction_index: int, r: float) -> TreePoint:
        """Tree point at distance r from p along the representative geodesic."""
        if r <= 1e-15:
            return self.point
        length = self.lengths[direction_index]
        if r > length + 1e-12:
            raise ValueError(
                f"direction {direction_index} only extends to length {length}, needed {r}")
        seg = GeodesicSegment(self.tree, self.point, self.representatives[direction_index])
        return seg.eval(min(1.0, r / seg.length))


def tree_tangent_cone(tree: MetricTree, p: TreePoint) -> TreeTangentCone:
    p = tree.canonical(p)
    dirs = tree.directions_at(p)
    if not dirs:
        # single-vertex tree: degenerate one-direction ray of length zero
        base = FiniteMetricSpace(np.zeros((1, 1)))
        return TreeTangentCone(tree, p, EuclideanCone(base), [None], [p], [0.0])
    k = len(dirs)
    dist = np.full((k, k), math.pi)
    np.fill_diagonal(dist, 0.0)
    base = FiniteMetricSpace(dist)
    return TreeTangentCone(
        tree, p, EuclideanCone(base),
        [d for d, _, _ in dirs],
        [rep for _, rep, _ in dirs],
        [length for _, _, length in dirs],
    )
