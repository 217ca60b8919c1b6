import math

import numpy as np
import pytest

from cat0inv.spaces import (ConePoint, EuclideanCone, EuclideanSpace,
                            FiniteMetricSpace, GeodesicSegment, MetricTree,
                            ProductSpace, alexandrov_angle, comparison_angle,
                            distance, geodesic, scale_cone_point, space_from_json,
                            tree_tangent_cone, tripod, verify_cat0_sample)

from conftest import random_metric_tree


def two_point_cone(theta):
    return EuclideanCone(FiniteMetricSpace([[0.0, theta], [theta, 0.0]]))


# ---------------------------------------------------------------- distances
def test_cone_distance_right_angle():
    cone = two_point_cone(math.pi / 2)
    d = distance(cone, cone.point(0, 1.0), cone.point(1, 1.0))
    assert d == pytest.approx(math.sqrt(2.0), abs=1e-12)


def test_cone_distance_angle_capped_at_pi():
    cone = two_point_cone(3 * math.pi / 2)
    d = distance(cone, cone.point(0, 1.0), cone.point(1, 1.0))
    assert d == pytest.approx(2.0, abs=1e-12)


def test_product_distance_unit_square_diagonal(unit_segment):
    prod = ProductSpace([unit_segment, unit_segment])
    p = (unit_segment.point(vertex=0), unit_segment.point(vertex=0))
    q = (unit_segment.point(vertex=1), unit_segment.point(vertex=1))
    assert prod.distance(p, q) == pytest.approx(math.sqrt(2.0), abs=1e-12)


def test_distance_zero_iff_equal_after_canonicalization(tripod_tree):
    end_of_edge = tripod_tree.point(edge=0, offset=1.0)  # canonicalizes to vertex 1
    assert end_of_edge.is_vertex
    assert tripod_tree.distance(end_of_edge, tripod_tree.point(vertex=1)) == 0.0


@pytest.mark.parametrize("builder", [
    lambda: EuclideanSpace(3),
    lambda: random_metric_tree(np.random.default_rng(5), 9),
    lambda: two_point_cone(2.0),
    lambda: ProductSpace([EuclideanSpace(2), tripod()]),
])
def test_metric_axioms_on_random_triples(builder):
    space = builder()
    rng = np.random.default_rng(11)
    for _ in range(10000):
        p, q, r = (space.random_point(rng) for _ in range(3))
        dpq = space.distance(p, q)
        dqp = space.distance(q, p)
        assert dpq >= 0
        assert dpq == pytest.approx(dqp, abs=1e-9)
        assert dpq <= space.distance(p, r) + space.distance(r, q) + 1e-9


# ---------------------------------------------------------------- cone scaling
def test_scale_cone_point_halves_radius():
    cone = two_point_cone(1.0)
    p = scale_cone_point(cone, cone.point(0, 2.0), 0.5)
    assert p.direction == 0 and p.radius == pytest.approx(1.0)


def test_scale_cone_origin_fixed():
    cone = two_point_cone(1.0)
    assert scale_cone_point(cone, cone.origin, 3.0).is_origin


def test_scale_cone_rejects_nonpositive():
    cone = two_point_cone(1.0)
    with pytest.raises(ValueError):
        scale_cone_point(cone, cone.point(0, 1.0), 0.0)


def test_cone_homogeneity_on_random_pairs(heawood_cone):
    rng = np.random.default_rng(3)
    for _ in range(1000):
        v = heawood_cone.random_point(rng)
        w = heawood_cone.random_point(rng)
        c = float(rng.uniform(0.1, 4.0))
        lhs = heawood_cone.distance(scale_cone_point(heawood_cone, v, c),
                                    scale_cone_point(heawood_cone, w, c))
        assert lhs == pytest.approx(c * heawood_cone.distance(v, w), abs=1e-9)


def test_scaled_pair_distance_doubles():
    cone = two_point_cone(math.pi / 2)
    v, w = cone.point(0, 1.0), cone.point(1, 1.0)
    d2 = cone.distance(scale_cone_point(cone, v, 2.0), scale_cone_point(cone, w, 2.0))
    assert d2 == pytest.approx(2.0 * math.sqrt(2.0), abs=1e-12)


# ---------------------------------------------------------------- geodesics
def test_euclidean_geodesic_midpoint(plane):
    seg = geodesic(plane, [0.0, 0.0], [2.0, 0.0])
    assert np.allclose(seg.eval(0.5), [1.0, 0.0])


def test_tripod_geodesic_passes_center(tripod_tree):
    seg = geodesic(tripod_tree, tripod_tree.point(vertex=1), tripod_tree.point(vertex=2))
    assert seg.midpoint() == tripod_tree.point(vertex=0)


def test_cone_antipodal_geodesic_routes_through_origin():
    cone = two_point_cone(math.pi)
    seg = geodesic(cone, cone.point(0, 1.0), cone.point(1, 1.0))
    assert seg.midpoint().is_origin


@pytest.mark.parametrize("builder", [
    lambda: EuclideanSpace(2),
    lambda: random_metric_tree(np.random.default_rng(7), 8),
    lambda: two_point_cone(2.5),
    lambda: ProductSpace([EuclideanSpace(1), tripod()]),
])
def test_geodesic_parametrization_is_isometric(builder):
    space = builder()
    rng = np.random.default_rng(23)
    for _ in range(60):
        p, q = space.random_point(rng), space.random_point(rng)
        seg = GeodesicSegment(space, p, q)
        for _ in range(5):
            s, t = float(rng.uniform()), float(rng.uniform())
            expect = abs(s - t) * seg.length
            assert space.distance(seg.eval(s), seg.eval(t)) == pytest.approx(expect, abs=1e-9)


def test_geodesic_midpoint_convexity(plane):
    rng = np.random.default_rng(1)
    for _ in range(40):
        p, q = plane.random_point(rng), plane.random_point(rng)
        seg = GeodesicSegment(plane, p, q)
        m = seg.midpoint()
        assert plane.distance(seg.p, m) == pytest.approx(seg.length / 2, abs=1e-9)


# ---------------------------------------------------------------- angles
def test_comparison_angle_tripod_center_is_pi(tripod_tree):
    ang = comparison_angle(tripod_tree, tripod_tree.point(vertex=0),
                           tripod_tree.point(vertex=1), tripod_tree.point(vertex=2))
    assert ang == pytest.approx(math.pi, abs=1e-12)


def test_comparison_angle_right_angle(plane):
    assert comparison_angle(plane, [0, 0], [1, 0], [0, 1]) == pytest.approx(math.pi / 2)


def test_comparison_angle_collinear_is_zero(plane):
    seg = geodesic(plane, [0.0, 0.0], [2.0, 2.0])
    assert comparison_angle(plane, [0, 0], [2, 2], seg.eval(0.3)) == pytest.approx(0.0, abs=1e-7)


def test_comparison_angle_rejects_degenerate(plane):
    with pytest.raises(ValueError):
        comparison_angle(plane, [0, 0], [0, 0], [1, 0])


def test_alexandrov_angle_tree_branches(tripod_tree):
    c = tripod_tree.point(vertex=0)
    assert alexandrov_angle(tripod_tree, c, tripod_tree.point(vertex=1),
                            tripod_tree.point(vertex=2)) == math.pi
    same_branch = tripod_tree.point(edge=0, offset=0.4)
    assert alexandrov_angle(tripod_tree, c, tripod_tree.point(vertex=1),
                            same_branch) == 0.0


def test_alexandrov_angle_flat_matches_euclid(plane):
    ang = alexandrov_angle(plane, [0, 0], [1, 0], [1, 1])
    assert ang == pytest.approx(math.pi / 4, abs=1e-6)


def test_alexandrov_angle_product_numeric_limit():
    prod = ProductSpace([EuclideanSpace(1), EuclideanSpace(1)])
    ang = alexandrov_angle(prod, ((0.0,), (0.0,)), ((1.0,), (0.0,)), ((1.0,), (1.0,)))
    assert ang == pytest.approx(math.pi / 4, abs=1e-6)


def test_angle_bounds_and_monotonicity():
    rng = np.random.default_rng(2)
    spaces = [EuclideanSpace(2), random_metric_tree(rng, 7)]
    for space in spaces:
        for _ in range(120):
            p, q, r = (space.random_point(rng) for _ in range(3))
            if min(space.distance(p, q), space.distance(p, r)) <= 1e-6:
                continue
            comp = comparison_angle(space, p, q, r)
            alex = alexandrov_angle(space, p, q, r)
            assert 0.0 <= comp <= math.pi
            # compare cosines: acos loses half the float digits near pi
            assert math.cos(alex) >= math.cos(comp) - 1e-9


# ---------------------------------------------------------------- tangent cones
def test_tangent_cone_tripod_center(tripod_tree):
    tc = tree_tangent_cone(tripod_tree, tripod_tree.point(vertex=0))
    assert tc.cone.base.size == 3
    for i in range(3):
        for j in range(i + 1, 3):
            assert tc.cone.base.d(i, j) == pytest.approx(math.pi)


def test_tangent_cone_edge_interior_is_line(tripod_tree):
    tc = tree_tangent_cone(tripod_tree, tripod_tree.point(edge=0, offset=0.5))
    assert tc.cone.base.size == 2
    assert tc.cone.base.d(0, 1) == pytest.approx(math.pi)


def test_tangent_cone_leaf_is_ray(tripod_tree):
    tc = tree_tangent_cone(tripod_tree, tripod_tree.point(vertex=1))
    assert tc.cone.base.size == 1


def test_log_map_radius_and_direction(tripod_tree):
    tc = tree_tangent_cone(tripod_tree, tripod_tree.point(vertex=0))
    v = tc.log_map(tripod_tree.point(edge=2, offset=0.25))
    assert v.radius == pytest.approx(0.25)


def test_log_map_is_one_lipschitz():
    rng = np.random.default_rng(17)
    for trial in range(10):
        tree = random_metric_tree(rng, int(rng.integers(4, 10)))
        p = tree.random_point(rng)
        tc = tree_tangent_cone(tree, p)
        for _ in range(100):
            q, r = tree.random_point(rng), tree.random_point(rng)
            dc = tc.cone.distance(tc.log_map(q), tc.log_map(r))
            assert dc <= tree.distance(q, r) + 1e-9


# ---------------------------------------------------------------- CAT(0) sampling
def test_cat0_sampling_flat_plane(plane):
    assert verify_cat0_sample(plane, 300, seed=4).passed


def test_cat0_sampling_tree():
    tree = random_metric_tree(np.random.default_rng(9), 9)
    assert verify_cat0_sample(tree, 300, seed=4).passed


def test_cat0_sampling_flags_narrow_three_ray_cone():
    # three directions pairwise pi/4: routing angles add up and triangles
    # spread fatter than their comparison triangles
    d = math.pi / 4
    base = FiniteMetricSpace([[0, d, d], [d, 0, d], [d, d, 0]])
    report = verify_cat0_sample(EuclideanCone(base), 1000, seed=0)
    assert not report.passed
    assert report.max_excess > 1e-3


def test_cat0_sampling_two_ray_cone_is_flat_wedge():
    # a cone over two points at distance pi/4 unrolls to a convex planar
    # wedge, so no violations can occur
    report = verify_cat0_sample(two_point_cone(math.pi / 4), 1000, seed=0)
    assert report.passed


# ---------------------------------------------------------------- io
def test_space_json_round_trips(tripod_tree, heawood_cone):
    for space in [EuclideanSpace(3), tripod_tree, heawood_cone,
                  ProductSpace([EuclideanSpace(1), tripod_tree])]:
        clone = space_from_json(space.to_json())
        assert clone.to_json() == space.to_json()


def test_tree_point_json_round_trip(tripod_tree):
    p = tripod_tree.point(edge=1, offset=0.3)
    data = tripod_tree.point_to_json(p)
    assert tripod_tree.point_from_json(data) == p


def test_finite_metric_validation_rejects_triangle_violation():
    with pytest.raises(ValueError):
        FiniteMetricSpace([[0, 1, 3], [1, 0, 1], [3, 1, 0]])


def test_tree_validation_rejects_cycle():
    with pytest.raises(ValueError):
        MetricTree(3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)])
