import math

import numpy as np
import pytest

from cat0inv.spaces import EuclideanCone, EuclideanSpace, GeodesicSegment, heawood_base, tripod
from cat0inv.spectral import (LabeledGraph, VertexMap, complete_graph, cycle_graph,
                              embedding_obstruction, expander_certificate,
                              laplacian_lambda1, poincare_check, random_regular_graph,
                              rayleigh_quotient, sandwich_check, wang_lambda1,
                              wang_quotient)

from conftest import random_metric_tree


def walk_laplacian_eigs(graph):
    """Independent oracle: dense eigenvalues of the walk operator I - A D^-1."""
    n = graph.num_vertices
    A = np.zeros((n, n))
    for u, v in graph.edges:
        A[u, v] = A[v, u] = 1.0
    D_inv = np.diag(1.0 / graph.degrees)
    evals = np.linalg.eigvals(np.eye(n) - A @ D_inv)
    evals = np.sort(evals.real)
    return evals


def random_connected_graph(rng, n):
    edges = set()
    order = rng.permutation(n)
    for i in range(1, n):
        a, b = int(order[i]), int(order[int(rng.integers(0, i))])
        edges.add((min(a, b), max(a, b)))
    extra = int(rng.integers(0, n))
    for _ in range(extra):
        a, b = int(rng.integers(0, n)), int(rng.integers(0, n))
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return LabeledGraph(n, sorted(edges))


# ---------------------------------------------------------------- lambda1
def test_lambda1_k2():
    lam, _ = laplacian_lambda1(LabeledGraph(2, [(0, 1)]))
    assert lam == pytest.approx(2.0, abs=1e-12)


def test_lambda1_c4():
    lam, _ = laplacian_lambda1(cycle_graph(4))
    assert lam == pytest.approx(1.0, abs=1e-12)


def test_lambda1_k4():
    lam, _ = laplacian_lambda1(complete_graph(4))
    assert lam == pytest.approx(4.0 / 3.0, abs=1e-12)


def test_lambda1_matches_walk_operator_oracle():
    rng = np.random.default_rng(12)
    for _ in range(15):
        g = random_connected_graph(rng, int(rng.integers(3, 11)))
        lam, f = laplacian_lambda1(g)
        oracle = walk_laplacian_eigs(g)[1]
        assert lam == pytest.approx(oracle, abs=1e-9)
        assert rayleigh_quotient(g, f) == pytest.approx(lam, abs=1e-9)


def test_lambda1_rejects_disconnected():
    g = LabeledGraph(4, [(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        laplacian_lambda1(g)


# ---------------------------------------------------------------- wang estimates
def test_wang_k4_into_line_matches_lambda1():
    res = wang_lambda1(complete_graph(4), EuclideanSpace(1), restarts=2, seed=0)
    assert res.value == pytest.approx(4.0 / 3.0, abs=1e-5)


def test_wang_c4_into_line():
    res = wang_lambda1(cycle_graph(4), EuclideanSpace(1), restarts=2, seed=0)
    assert res.value == pytest.approx(1.0, abs=1e-5)


def test_wang_c4_into_tripod_forced_to_lambda1(tripod_tree):
    res = wang_lambda1(cycle_graph(4), tripod_tree, restarts=2, seed=0)
    assert res.value == pytest.approx(1.0, abs=1e-3)


def test_wang_matches_lambda1_on_twenty_graphs():
    rng = np.random.default_rng(42)
    line = EuclideanSpace(1)
    for _ in range(20):
        g = random_connected_graph(rng, int(rng.integers(3, 13)))
        res = wang_lambda1(g, line, restarts=1, seed=0)
        assert abs(res.value - res.lambda1) <= 1e-5


def test_wang_monotone_in_restarts_and_relabeling():
    rng = np.random.default_rng(7)
    g = random_connected_graph(rng, 7)
    tree = random_metric_tree(rng, 5)
    vals = [wang_lambda1(g, tree, restarts=r, seed=3).value for r in (1, 2, 4)]
    assert vals[1] <= vals[0] + 1e-12
    assert vals[2] <= vals[1] + 1e-12
    # vertex relabeling leaves the estimate unchanged
    perm = rng.permutation(g.num_vertices)
    relabeled = LabeledGraph(g.num_vertices,
                             [(int(perm[u]), int(perm[v])) for u, v in g.edges])
    v1 = wang_lambda1(g, tree, restarts=1, seed=0).value
    v2 = wang_lambda1(relabeled, tree, restarts=1, seed=0).value
    assert v1 == pytest.approx(v2, abs=1e-9)


def test_wang_quotient_scale_invariance(tripod_tree):
    g = cycle_graph(4)
    rng = np.random.default_rng(9)
    pts = [tripod_tree.random_point(rng) for _ in range(4)]
    val, _ = wang_quotient(g, tripod_tree, pts)
    scaled = tripod(leg=3.0)
    pts3 = []
    for p in pts:
        if p.is_vertex:
            pts3.append(scaled.point(vertex=p.vertex))
        else:
            pts3.append(scaled.point(edge=p.edge, offset=3.0 * p.offset))
    val3, _ = wang_quotient(g, scaled, pts3)
    assert val3 == pytest.approx(val, abs=1e-9)


# ---------------------------------------------------------------- sandwich
def test_sandwich_c4_into_line():
    rep = sandwich_check(cycle_graph(4), EuclideanSpace(1), delta_upper=0.0,
                         restarts=2, tol=1e-5, seed=0)
    assert rep.passed
    assert rep.wang_estimate == pytest.approx(1.0, abs=1e-5)


def test_sandwich_tree_target_pins_to_lambda1(tripod_tree):
    rng = np.random.default_rng(3)
    g = random_connected_graph(rng, 8)
    rep = sandwich_check(g, tripod_tree, delta_upper=0.0, restarts=2,
                         tol=1e-3, seed=0)
    assert rep.passed
    assert abs(rep.wang_estimate - rep.lambda1) <= 1e-3


def test_sandwich_tree_product_margins_with_half_bound(tripod_tree):
    # products of trees satisfy the cube-complex style bound 1/2, so both
    # sandwich margins must be nonnegative with delta_upper = 0.5
    from cat0inv.spaces import ProductSpace
    prod = ProductSpace([tripod_tree, tripod_tree])
    rep = sandwich_check(cycle_graph(5), prod, delta_upper=0.5, restarts=1,
                         tol=1e-6, seed=0)
    assert rep.passed
    assert rep.lower_margin >= -1e-6 and rep.upper_margin >= -1e-6


def test_sandwich_k4_into_heawood_cone(heawood_cone):
    rep = sandwich_check(complete_graph(4), heawood_cone, delta_upper=0.5,
                         restarts=2, tol=1e-5, seed=0)
    assert rep.passed
    assert rep.wang_estimate <= 4.0 / 3.0 + 1e-5
    assert rep.wang_estimate >= (1 - 0.5) * 4.0 / 3.0 - 1e-5


# ---------------------------------------------------------------- expanders
def test_random_regular_graph_degrees():
    g = random_regular_graph(10, 3, seed=4)
    assert g.num_vertices == 10
    assert set(g.degrees.tolist()) == {3}


def test_random_regular_requires_even_product():
    with pytest.raises(ValueError):
        random_regular_graph(5, 3, seed=0)


def test_cycle_family_fails_certificate():
    family = [cycle_graph(n) for n in (50, 100, 200)]
    cert = expander_certificate(family, d=2, lam=0.05)
    assert not cert.passed
    assert any(f["property"] == "spectral_gap" for f in cert.failures)


def test_three_regular_family_certifies():
    family = [random_regular_graph(n, 3, seed=1000 + n) for n in (50, 100, 200)]
    cert = expander_certificate(family, d=3, lam=0.05)
    assert cert.passed
    assert all(l >= 0.05 for l in cert.lambda1_values)


# ---------------------------------------------------------------- poincare + obstruction
def test_poincare_trivial_lambda_zero(plane):
    g = cycle_graph(4)
    rng = np.random.default_rng(0)
    vm = VertexMap(plane, [plane.random_point(rng) for _ in range(4)])
    assert poincare_check(g, plane, vm, 0.0).passed


def test_poincare_equality_on_eigenfunction():
    g = cycle_graph(4)
    lam, f = laplacian_lambda1(g)
    line = EuclideanSpace(1)
    vm = VertexMap(line, [[float(x)] for x in f])
    rep = poincare_check(g, line, vm, lam)
    assert rep.passed
    assert rep.margin == pytest.approx(0.0, abs=1e-9)


def test_poincare_k4_into_tree_random_maps(tripod_tree):
    g = complete_graph(4)
    lam = 4.0 / 3.0
    rng = np.random.default_rng(8)
    for _ in range(100):
        vm = VertexMap(tripod_tree, [tripod_tree.random_point(rng) for _ in range(4)])
        try:
            assert poincare_check(g, tripod_tree, vm, lam).passed
        except ValueError:
            pass  # constant map sampled


def test_poincare_passes_on_wang_witness(tripod_tree):
    g = cycle_graph(5)
    res = wang_lambda1(g, tripod_tree, restarts=2, seed=2)
    rep = poincare_check(g, tripod_tree, res.witness, res.value - 1e-9)
    assert rep.passed


def test_obstruction_bound_value():
    rep = embedding_obstruction(None, 1.0, 1.0)
    assert rep.displacement_bound == pytest.approx(1.0 / math.sqrt(2.0))


def test_obstruction_k4_random_edge_lipschitz_maps(tripod_tree):
    # B = 1 / sqrt(2 * 4/3) = sqrt(3/8); maps with all images within a ball of
    # radius 1/2 around a point have every edge image <= 1
    g = complete_graph(4)
    B = 1.0 / math.sqrt(8.0 / 3.0)
    rng = np.random.default_rng(15)
    from cat0inv.barycenter import SupportedMeasure, barycenter
    for _ in range(200):
        center = tripod_tree.random_point(rng)
        pts = []
        for _ in range(4):
            q = tripod_tree.random_point(rng)
            seg = GeodesicSegment(tripod_tree, center, q)
            reach = min(0.5, seg.length)
            pts.append(seg.eval(0.0 if seg.length == 0 else
                                rng.uniform(0, reach) / seg.length))
        for u, v in g.edges:
            assert tripod_tree.distance(pts[u], pts[v]) <= 1.0 + 1e-12
        deg = g.degrees.astype(float)
        mu = SupportedMeasure(tripod_tree, pts, deg / deg.sum())
        bar = barycenter(mu)
        rms = math.sqrt(sum(d * tripod_tree.distance(p, bar) ** 2
                            for d, p in zip(deg, pts)) / deg.sum())
        assert rms <= B + 1e-6


def test_obstruction_family_flags_contradiction():
    family = [random_regular_graph(n, 3, seed=1000 + n) for n in (50, 100, 200)]
    rho1 = lambda s: s / 4.0
    L = 0.4
    flags = []
    for g in family:
        rep = embedding_obstruction(g, 0.05, L, rho1=rho1)
        flags.append(rep.contradiction)
    # medians grow with n; the last family member crosses 4B
    assert flags[-1] is True
    assert flags[0] is False
