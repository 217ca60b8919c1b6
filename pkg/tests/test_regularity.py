import itertools
import math

import numpy as np
import pytest

from cat0inv.regularity import (PropertyPTriple, check_property_p, covering_number,
                                doubling_constant, doubling_p_triple,
                                property_p_witness_from_net)
from cat0inv.spaces import EuclideanCone, FiniteMetricSpace, heawood_base

from conftest import random_finite_metric


def uniform_simplex(n, d):
    m = np.full((n, n), d, dtype=float)
    np.fill_diagonal(m, 0.0)
    return FiniteMetricSpace(m)


def path_space(n, step=1.0):
    pos = np.arange(n) * step
    return FiniteMetricSpace(np.abs(pos[:, None] - pos[None, :]))


def brute_force_min_cover(X, balls):
    """Exhaustive oracle over all subsets (tiny spaces only)."""
    universe = set(range(X.size))
    for size in range(1, X.size + 1):
        for combo in itertools.combinations(range(X.size), size):
            if set().union(*(balls[k] for k in combo)) >= universe:
                return size
    return X.size


# ---------------------------------------------------------------- covering numbers
def test_covering_seven_separated_points():
    X = uniform_simplex(7, math.pi)
    res = covering_number(X, math.pi / 12)
    assert res.count == 7 and res.exact


def test_covering_two_points_large_radius():
    X = uniform_simplex(2, 1.0)
    assert covering_number(X, 2.0).count == 1
    assert covering_number(X, 0.4).count == 2


def test_covering_matches_brute_force():
    rng = np.random.default_rng(6)
    for _ in range(15):
        X = random_finite_metric(rng, int(rng.integers(2, 8)))
        r = float(rng.uniform(0.2, 2.0))
        balls = [set(X.open_ball(i, r).tolist()) for i in range(X.size)]
        assert covering_number(X, r).count == brute_force_min_cover(X, balls)


def test_covering_monotone_in_radius():
    rng = np.random.default_rng(14)
    X = random_finite_metric(rng, 10)
    radii = np.linspace(0.1, X.diameter() * 1.1, 12)
    counts = [covering_number(X, float(r)).count for r in radii]
    assert all(a >= b for a, b in zip(counts, counts[1:]))
    assert covering_number(X, X.diameter() * 1.01).count == 1


# ---------------------------------------------------------------- property P
def test_property_p_two_points_full_witness():
    X = uniform_simplex(2, math.pi)
    triple = PropertyPTriple(math.pi / 3, 1.0, math.pi / 6)
    assert check_property_p(X, [0, 1], triple).passed


def test_property_p_two_points_single_witness():
    X = uniform_simplex(2, math.pi)
    triple = PropertyPTriple(math.pi / 3, 1.0, math.pi / 6)
    assert check_property_p(X, [0], triple).passed


def test_property_p_three_point_fraction():
    # equilateral triple with side above theta: each far pair is separated by
    # exactly two of the three witnesses (the two endpoints), never the third
    X = uniform_simplex(3, 1.2)
    strict = PropertyPTriple(math.pi / 3, 1.0, math.pi / 6)
    report = check_property_p(X, [0, 1, 2], strict)
    assert not report.passed
    assert report.worst_fraction == pytest.approx(2.0 / 3.0)
    relaxed = PropertyPTriple(math.pi / 3, 2.0 / 3.0, math.pi / 6)
    assert check_property_p(X, [0, 1, 2], relaxed).passed


def test_property_p_monotone_in_parameters():
    rng = np.random.default_rng(3)
    X = random_finite_metric(rng, 9, scale=1.4)
    base = PropertyPTriple(0.9, 0.4, 0.25)
    rep = check_property_p(X, list(range(X.size)), base)
    if rep.passed:
        easier = PropertyPTriple(1.1, 0.3, 0.2)
        assert check_property_p(X, list(range(X.size)), easier).passed


def test_witness_from_net_two_points():
    X = uniform_simplex(2, math.pi)
    S, triple, report = property_p_witness_from_net(X)
    assert len(S) == 2
    assert triple.alpha == pytest.approx(1.0)
    assert triple.theta == pytest.approx(math.pi / 3)
    assert triple.eps == pytest.approx(math.pi / 6)
    assert report.passed


def test_witness_from_net_small_diameter_vacuous():
    rng = np.random.default_rng(8)
    X = random_finite_metric(rng, 6, scale=0.05)
    S, triple, report = property_p_witness_from_net(X)
    assert report.passed
    assert report.num_pairs_checked == 0


def test_witness_from_net_heawood():
    X = heawood_base()  # all positive distances are >= pi/3
    S, triple, report = property_p_witness_from_net(X)
    assert len(S) == 14
    assert triple.alpha == pytest.approx(2.0 / 14.0)
    assert report.passed


def test_witness_from_net_on_random_spaces():
    rng = np.random.default_rng(77)
    for _ in range(50):
        n = int(rng.integers(2, 17))
        scale = float(rng.uniform(math.pi / 4, 2 * math.pi)) / 3.0
        X = random_finite_metric(rng, n, scale=scale)
        _, _, report = property_p_witness_from_net(X)
        assert report.passed


# ---------------------------------------------------------------- doubling
def test_doubling_four_separated_points():
    X = uniform_simplex(4, 1.0)
    assert doubling_constant(X).constant == 4


def test_doubling_two_points():
    assert doubling_constant(uniform_simplex(2, 1.0)).constant == 2


def test_doubling_five_point_path():
    res = doubling_constant(path_space(5))
    assert res.constant == 3


def test_doubling_matches_exhaustive_covers():
    rng = np.random.default_rng(10)
    for _ in range(10):
        X = random_finite_metric(rng, int(rng.integers(2, 7)))
        res = doubling_constant(X)
        worst = 1
        for r in X.realized_distances():
            half = [set(X.closed_ball(z, r / 2).tolist()) for z in range(X.size)]
            for x in range(X.size):
                target = set(X.closed_ball(x, r).tolist())
                trimmed = [b & target for b in half]
                worst = max(worst, brute_force_min_cover_subset(target, trimmed))
        assert res.constant == worst


def brute_force_min_cover_subset(target, sets):
    for size in range(1, len(target) + 1):
        for combo in itertools.combinations(range(len(sets)), size):
            if set().union(*(sets[k] for k in combo)) >= target:
                return size
    return len(target)


def test_doubling_exact_cover_never_exceeds_greedy():
    from cat0inv.regularity import _greedy_cover, _exact_cover
    rng = np.random.default_rng(44)
    for _ in range(10):
        X = random_finite_metric(rng, int(rng.integers(3, 10)))
        for r in X.realized_distances():
            half = [set(X.closed_ball(z, r / 2).tolist()) for z in range(X.size)]
            for x in range(X.size):
                target = set(X.closed_ball(x, r).tolist())
                trimmed = [b & target for b in half]
                assert len(_exact_cover(target, trimmed)) <= len(
                    _greedy_cover(target, trimmed))


def test_doubling_p_triple_values():
    triple, note = doubling_p_triple(2)
    assert triple.alpha == pytest.approx(0.5)
    assert triple.theta == pytest.approx(math.pi / 3)
    assert triple.eps == pytest.approx(math.pi / 6)
    assert note == ""
    degenerate, note1 = doubling_p_triple(1)
    assert degenerate.alpha == 1.0
    assert "clamped" in note1


def test_doubling_p_triple_configurable_exponent():
    triple, _ = doubling_p_triple(3, exponent=4)
    assert triple.alpha == pytest.approx(2.0 / 81.0)


def test_heawood_cone_doubling_feeds_property_p():
    # sample a grid in the unit ball of the cone, measure its doubling
    # constant, then check the base against the induced separation triple
    base = heawood_base()
    cone = EuclideanCone(base)
    pts = [cone.origin] + [cone.point(i, r) for i in range(14)
                           for r in (0.5, 1.0)]
    n = len(pts)
    dist = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            dist[i, j] = dist[j, i] = cone.distance(pts[i], pts[j])
    grid = FiniteMetricSpace(dist)
    N_hat = doubling_constant(grid).constant
    triple, _ = doubling_p_triple(N_hat)
    report = check_property_p(base, list(range(base.size)), triple)
    assert report.passed
