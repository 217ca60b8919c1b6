import numpy as np
import pytest

from cat0inv.spaces import (EuclideanCone, EuclideanSpace, FiniteMetricSpace,
                            MetricTree, ProductSpace, heawood_base, tripod)


@pytest.fixture
def plane():
    return EuclideanSpace(2)


@pytest.fixture
def tripod_tree():
    return tripod()


@pytest.fixture
def unit_segment():
    return MetricTree(2, [(0, 1, 1.0)])


@pytest.fixture
def heawood_cone():
    return EuclideanCone(heawood_base())


def random_metric_tree(rng, n):
    """Random tree: each vertex attaches to a uniformly random earlier one."""
    edges = [(int(rng.integers(0, v)), v, float(rng.uniform(0.2, 2.0)))
             for v in range(1, n)]
    return MetricTree(n, edges)


def random_tree_measure(rng, tree, max_support=10):
    from cat0inv.barycenter import SupportedMeasure
    m = int(rng.integers(2, max_support + 1))
    pts = []
    for _ in range(m):
        pts.append(tree.random_point(rng))
    w = rng.random(m) + 0.1
    w /= w.sum()
    return SupportedMeasure(tree, pts, w)


def random_finite_metric(rng, n, scale=1.0):
    """Random finite metric from points in R^3, rescaled."""
    pts = rng.normal(size=(n, 3))
    d = np.linalg.norm(pts[:, None] - pts[None, :], axis=2) * scale
    return FiniteMetricSpace(d)
