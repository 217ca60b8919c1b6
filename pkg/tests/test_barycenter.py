import math

import numpy as np
import pytest

from cat0inv.barycenter import (SupportedMeasure, UncertifiedBarycenterError,
                                barycenter, certify_barycenter, variance_gap)
from cat0inv.spaces import (EuclideanCone, EuclideanSpace, FiniteMetricSpace,
                            GeodesicSegment, MetricTree, ProductSpace, tripod)

from conftest import random_metric_tree, random_tree_measure


def uniform_leaf_measure(tree):
    leaves = [tree.point(vertex=v) for v in (1, 2, 3)]
    return SupportedMeasure(tree, leaves, [1 / 3] * 3)


# ---------------------------------------------------------------- basics
def test_euclidean_mean():
    line = EuclideanSpace(1)
    mu = SupportedMeasure(line, [[0.0], [2.0]], [0.5, 0.5])
    assert barycenter(mu)[0] == pytest.approx(1.0)


def test_segment_weighted_barycenter(unit_segment):
    mu = SupportedMeasure(unit_segment,
                          [unit_segment.point(vertex=0), unit_segment.point(vertex=1)],
                          [0.25, 0.75])
    b = barycenter(mu)
    assert not b.is_vertex and b.offset == pytest.approx(0.75)


def test_tripod_uniform_barycenter_is_center(tripod_tree):
    assert barycenter(uniform_leaf_measure(tripod_tree)) == tripod_tree.point(vertex=0)


def test_weights_must_sum_to_one(plane):
    with pytest.raises(ValueError):
        SupportedMeasure(plane, [[0, 0], [1, 1]], [0.5, 0.6])


def test_weights_must_be_positive(plane):
    with pytest.raises(ValueError):
        SupportedMeasure(plane, [[0, 0], [1, 1]], [1.2, -0.2])


# ---------------------------------------------------------------- variance gap
def test_variance_gap_vanishes_at_barycenter(tripod_tree):
    mu = uniform_leaf_measure(tripod_tree)
    assert variance_gap(mu, barycenter(mu)) == pytest.approx(0.0, abs=1e-12)


def test_variance_gap_euclidean_equality(plane):
    rng = np.random.default_rng(0)
    pts = rng.normal(size=(5, 2))
    w = rng.random(5) + 0.1
    w /= w.sum()
    mu = SupportedMeasure(plane, list(pts), w)
    for _ in range(20):
        y = plane.random_point(rng)
        assert variance_gap(mu, y) == pytest.approx(0.0, abs=1e-10)


def test_variance_gap_tripod_leaf(tripod_tree):
    mu = uniform_leaf_measure(tripod_tree)
    gap = variance_gap(mu, tripod_tree.point(vertex=1))
    assert gap == pytest.approx(2.0 / 3.0, abs=1e-12)


def test_variance_inequality_on_random_tree_measures():
    rng = np.random.default_rng(41)
    for _ in range(100):
        tree = random_metric_tree(rng, int(rng.integers(3, 10)))
        mu = random_tree_measure(rng, tree)
        bar = barycenter(mu)
        for _ in range(10):
            y = tree.random_point(rng)
            assert variance_gap(mu, y, bar=bar) >= -1e-8


# ---------------------------------------------------------------- certification
def test_certify_accepts_true_barycenter(tripod_tree):
    mu = uniform_leaf_measure(tripod_tree)
    assert certify_barycenter(mu, tripod_tree.point(vertex=0)).passed


def test_certify_rejects_leaf(tripod_tree):
    mu = uniform_leaf_measure(tripod_tree)
    report = certify_barycenter(mu, tripod_tree.point(vertex=1))
    assert not report.passed


def test_certify_accepts_euclidean_mean(plane):
    rng = np.random.default_rng(1)
    pts = rng.normal(size=(4, 2))
    mu = SupportedMeasure(plane, list(pts), [0.25] * 4)
    assert certify_barycenter(mu, barycenter(mu)).passed


def test_cone_barycenter_certifies_origin(heawood_cone):
    mu = SupportedMeasure(heawood_cone,
                          [heawood_cone.point(i, 1.0) for i in range(14)],
                          np.full(14, 1 / 14))
    assert barycenter(mu).is_origin


def test_cone_barycenter_single_ray():
    cone = EuclideanCone(FiniteMetricSpace([[0.0, 2.0], [2.0, 0.0]]))
    mu = SupportedMeasure(cone, [cone.point(0, 1.0), cone.point(0, 3.0)], [0.5, 0.5])
    b = barycenter(mu)
    assert b.direction == 0 and b.radius == pytest.approx(2.0)


# ---------------------------------------------------------------- invariances
def test_barycenter_invariant_under_permutation():
    rng = np.random.default_rng(13)
    tree = random_metric_tree(rng, 8)
    mu = random_tree_measure(rng, tree, max_support=6)
    perm = rng.permutation(mu.size)
    mu_perm = SupportedMeasure(tree, [mu.points[i] for i in perm], mu.weights[perm])
    assert tree.distance(barycenter(mu), barycenter(mu_perm)) <= 1e-12


def test_barycenter_maps_to_scaled_minimizer():
    rng = np.random.default_rng(29)
    n = 7
    edges = [(int(rng.integers(0, v)), v, float(rng.uniform(0.3, 1.5)))
             for v in range(1, n)]
    for c in (0.5, 3.0):
        tree = MetricTree(n, edges)
        scaled = MetricTree(n, [(u, v, c * l) for u, v, l in edges])
        m = 5
        keys = [(int(rng.integers(0, n - 1)), float(rng.uniform(0.1, 0.9)))
                for _ in range(m)]
        w = rng.random(m) + 0.1
        w /= w.sum()
        mu = SupportedMeasure(tree, [tree.point(edge=k, offset=o * tree.edges[k][2])
                                     for k, o in keys], w)
        mu_scaled = SupportedMeasure(
            scaled, [scaled.point(edge=k, offset=o * scaled.edges[k][2])
                     for k, o in keys], w)
        b = barycenter(mu)
        bs = barycenter(mu_scaled)
        # the scaled tree's minimizer sits at the scaled location
        for p, ps in zip(mu.points, mu_scaled.points):
            assert scaled.distance(bs, ps) == pytest.approx(c * tree.distance(b, p),
                                                            abs=1e-9)


def test_product_barycenter_is_tuple_of_factor_barycenters(plane, tripod_tree):
    prod = ProductSpace([plane, tripod_tree])
    rng = np.random.default_rng(3)
    pts = [(plane.random_point(rng), tripod_tree.random_point(rng)) for _ in range(5)]
    w = rng.random(5) + 0.1
    w /= w.sum()
    mu = SupportedMeasure(prod, pts, w)
    b = barycenter(mu)
    b0 = barycenter(SupportedMeasure(plane, [p[0] for p in pts], w))
    b1 = barycenter(SupportedMeasure(tripod_tree, [p[1] for p in pts], w))
    assert prod.distance(b, (b0, b1)) <= 1e-9


def golden_section_scan(tree, mu, tol=1e-10):
    """Brute-force oracle: golden-section minimization over every edge."""
    phi = (math.sqrt(5) - 1) / 2
    best = (math.inf, None)
    for k, (u, v, l) in enumerate(tree.edges):
        a, b = 0.0, l

        def f(s, k=k):
            return mu.squared_dispersion(tree.point(edge=k, offset=s))

        c, d = b - phi * (b - a), a + phi * (b - a)
        fc, fd = f(c), f(d)
        while b - a > tol:
            if fc < fd:
                b, d, fd = d, c, fc
                c = b - phi * (b - a)
                fc = f(c)
            else:
                a, c, fc = c, d, fd
                d = a + phi * (b - a)
                fd = f(d)
        s = (a + b) / 2
        val = f(s)
        if val < best[0]:
            best = (val, tree.point(edge=k, offset=s))
    return best[1]


def test_tree_barycenter_matches_golden_section_scan():
    rng = np.random.default_rng(71)
    for _ in range(100):
        tree = random_metric_tree(rng, int(rng.integers(3, 9)))
        mu = random_tree_measure(rng, tree, max_support=7)
        b_routing = barycenter(mu)
        b_oracle = golden_section_scan(tree, mu)
        assert tree.distance(b_routing, b_oracle) <= 1e-6
