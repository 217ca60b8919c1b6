"""Wang's nonlinear spectral constant for maps of a graph into a model space.

lambda_1(G, Y) is the infimum over nonconstant maps phi: V -> Y of

    sum_{uv in E} d(phi u, phi v)^2
    --------------------------------------------  ,
    sum_v deg(v) d(phi v, phibar)^2

where phibar is the barycenter of the degree-weighted image measure.  The
infimum is nonconvex; the optimizer below reports a certified UPPER estimate:
alternating sweeps of 1-d searches along geodesics, started from an isometric
line embedding of the Laplacian eigenfunction (exact whenever the target
contains a long enough geodesic and the invariant of the target vanishes)
plus seeded random maps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..barycenter import SupportedMeasure, UncertifiedBarycenterError, barycenter
from ..spaces import (EuclideanCone, EuclideanSpace, GeodesicSegment, MetricTree,
                      ProductSpace)
from .graphs import LabeledGraph
from .lambda1 import laplacian_lambda1

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class VertexMap:
    space: object
    points: tuple

    def __init__(self, space, points):
        points = tuple(space.canonical(p) for p in points)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "points", points)


def wang_quotient(graph: LabeledGraph, space, points, num_probes: int = 32):
    """(quotient, barycenter) of a vertex map; inf for constant maps."""
    num = sum(space.distance(points[u], points[v]) ** 2 for u, v in graph.edges)
    deg = graph.degrees.astype(float)
    mu = SupportedMeasure(space, points, deg / deg.sum())
    bar = barycenter(mu, num_probes=num_probes)
    den = float(sum(d * space.distance(p, bar) ** 2 for d, p in zip(deg, points)))
    if den <= 1e-300:
        return math.inf, bar
    return num / den, bar


# ---------------------------------------------------------------- line embeddings
def _line_position_map(space, rng):
    """(pos, half_width): pos maps [-w, w] isometrically into the space, or None."""
    if isinstance(space, EuclideanSpace):
        e = np.zeros(space.dimension)
        e[0] = 1.0
        return (lambda x: x * e), math.inf
    if isinstance(space, MetricTree):
        a, b = space.diameter_path()
        seg = GeodesicSegment(space, a, b)
        if seg.length <= 0:
            return None
        half = seg.length / 2.0

        def pos(x, seg=seg, half=half):
            return seg.eval((x + half) / seg.length)

        return pos, half
    if isinstance(space, EuclideanCone):
        best = None
        for i in range(space.base.size):
            for j in range(i + 1, space.base.size):
                ang = space.arc_length(i, j)
                if best is None or ang > best[0]:
                    best = (ang, i, j)
        if best is None or best[0] < math.pi - 1e-12:
            return None  # no pair of antipodal rays: no isometric line
        _, i, j = best

        def pos(x, i=i, j=j):
            if x >= 0:
                return space.point(j, x)
            return space.point(i, -x)

        return pos, math.inf
    if isinstance(space, ProductSpace):
        inner = _line_position_map(space.factors[0], rng)
        if inner is None:
            return None
        pos0, half = inner
        rest = [f.random_point(rng, 1.0) for f in space.factors[1:]]

        def pos(x, pos0=pos0, rest=rest):
            return tuple([pos0(x)] + rest)

        return pos, half
    return None


def _spectral_start(graph, space, rng):
    lam, f = laplacian_lambda1(graph)
    line = _line_position_map(space, rng)
    if line is None:
        return None
    pos, half = line
    fmax = float(np.max(np.abs(f)))
    alpha = 1.0 if not math.isfinite(half) else 0.98 * half / fmax
    return [pos(alpha * float(x)) for x in f]


# ---------------------------------------------------------------- local moves
def _move_targets(space, current, scale, rng):
    if isinstance(space, EuclideanSpace):
        x = space.canonical(current)
        targets = []
        for i in range(space.dimension):
            e = np.zeros(space.dimension)
            e[i] = scale
            targets += [x + e, x - e]
        targets.append(space.random_point(rng, scale))
        return targets
    if isinstance(space, MetricTree):
        return [space.point(vertex=v) for v in range(space.num_vertices)]
    if isinstance(space, EuclideanCone):
        r = max(scale, 1e-3)
        targets = [space.origin]
        targets += [space.point(i, 2.0 * r) for i in range(space.base.size)]
        return targets
    if isinstance(space, ProductSpace):
        cur = space.canonical(current)
        targets = []
        for f_idx, factor in enumerate(space.factors):
            for y in _move_targets(factor, cur[f_idx], scale, rng):
                targets.append(tuple(y if i == f_idx else cur[i]
                                     for i in range(len(space.factors))))
        return targets
    raise ValueError(f"unsupported space {space!r}")


def _golden_improve(graph, space, points, v, target, best_val, probes):
    """1-d golden-section along the geodesic from points[v] to the target."""
    seg = GeodesicSegment(space, points[v], target)
    if seg.length <= 1e-12:
        return best_val, None

    def q_at(s):
        trial = list(points)
        trial[v] = seg.eval(s)
        try:
            val, _ = wang_quotient(graph, space, trial, num_probes=probes)
        except UncertifiedBarycenterError:
            return math.inf  # configuration outside the certifiable regime
        return val

    a, b = 0.0, 1.0
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = q_at(c), q_at(d)
    for _ in range(28):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = q_at(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = q_at(d)
    s_best, f_best = (c, fc) if fc < fd else (d, fd)
    f_end = q_at(1.0)
    if f_end < f_best:
        s_best, f_best = 1.0, f_end
    if f_best < best_val - 1e-15:
        return f_best, seg.eval(s_best)
    return best_val, None


@dataclass
class WangResult:
    value: float
    witness: VertexMap
    lambda1: float
    restart_values: list = field(default_factory=list)
    sweeps: int = 0

    def to_json(self) -> dict:
        return {"value": self.value, "lambda1": self.lambda1,
                "restart_values": self.restart_values, "sweeps": self.sweeps}


def wang_lambda1(graph: LabeledGraph, space, restarts: int = 3, tol: float = 1e-7,
                 seed: int = 0, max_sweeps: int = 40, probes: int = 32) -> WangResult:
    """Upper estimate of lambda_1(G, Y) with its witness map.

    Deterministic per-restart seeds make the estimate monotone in `restarts`.
    """
    if not graph.is_connected():
        raise ValueError("Wang estimate requires a connected graph")
    lam, _ = laplacian_lambda1(graph)
    seeds = np.random.SeedSequence(seed).spawn(max(restarts, 1))
    best_val = math.inf
    best_map = None
    restart_values = []
    total_sweeps = 0
    for r in range(max(restarts, 1)):
        rng = np.random.default_rng(seeds[r])
        points = None
        if r == 0:
            points = _spectral_start(graph, space, rng)
        if points is None:
            points = [space.random_point(rng, 1.0) for _ in range(graph.num_vertices)]
        try:
            val, bar = wang_quotient(graph, space, points, num_probes=probes)
        except UncertifiedBarycenterError:
            continue  # start outside the certifiable regime; try another
        if not math.isfinite(val):
            continue
        order = np.arange(graph.num_vertices)
        for sweep in range(max_sweeps):
            total_sweeps += 1
            rng.shuffle(order)
            improved = False
            spread = math.sqrt(sum(space.distance(p, bar) ** 2 for p in points)
                               / len(points))
            for v in order:
                for target in _move_targets(space, points[int(v)],
                                            max(spread, 1e-3), rng):
                    new_val, new_pt = _golden_improve(graph, space, points, int(v),
                                                      target, val, probes)
                    if new_pt is not None and new_val < val * (1.0 - 1e-12):
                        points = list(points)
                        points[int(v)] = new_pt
                        if new_val < val - tol * max(val, 1.0):
                            improved = True
                        val = new_val
            try:
                _, bar = wang_quotient(graph, space, points, num_probes=probes)
            except UncertifiedBarycenterError:
                break
            if not improved:
                break
        restart_values.append(val)
        if val < best_val:
            best_val = val
            best_map = VertexMap(space, points)
    if best_map is None:
        raise UncertifiedBarycenterError(
            "no restart produced an evaluable nonconstant map in the target",
            None, None)
    return WangResult(value=best_val, witness=best_map, lambda1=lam,
                      restart_values=restart_values, sweeps=total_sweeps)


# ---------------------------------------------------------------- inequality reports
@dataclass
class PoincareReport:
    passed: bool
    edge_energy: float
    weighted_variance: float
    lambda_lower: float
    margin: float

    def to_json(self) -> dict:
        return {"passed": self.passed, "edge_energy": self.edge_energy,
                "weighted_variance": self.weighted_variance,
                "lambda_lower": self.lambda_lower, "margin": self.margin}


def poincare_check(graph: LabeledGraph, space, vmap: VertexMap,
                   lambda_lower: float, tol: float = 1e-9) -> PoincareReport:
    """Check sum_E d^2 >= lambda_lower * sum_V deg * d(., bar)^2 - tol."""
    points = vmap.points if isinstance(vmap, VertexMap) else tuple(vmap)
    num = sum(space.distance(points[u], points[v]) ** 2 for u, v in graph.edges)
    deg = graph.degrees.astype(float)
    mu = SupportedMeasure(space, points, deg / deg.sum())
    bar = barycenter(mu)
    den = float(sum(d * space.distance(p, bar) ** 2 for d, p in zip(deg, points)))
    if den <= 1e-300:
        raise ValueError("constant map: the weighted variance vanishes")
    margin = num - lambda_lower * den
    return PoincareReport(passed=(margin >= -tol * max(1.0, abs(num))),
                          edge_energy=float(num), weighted_variance=den,
                          lambda_lower=lambda_lower, margin=float(margin))


@dataclass
class SandwichReport:
    passed: bool
    lambda1: float
    wang_estimate: float
    delta_upper: float
    lower_bound: float
    lower_margin: float
    upper_margin: float

    def to_json(self) -> dict:
        return {"passed": self.passed, "lambda1": self.lambda1,
                "wang_estimate": self.wang_estimate, "delta_upper": self.delta_upper,
                "lower_bound": self.lower_bound, "lower_margin": self.lower_margin,
                "upper_margin": self.upper_margin}


def sandwich_check(graph: LabeledGraph, space, delta_upper: float,
                   restarts: int = 3, tol: float = 1e-5, seed: int = 0) -> SandwichReport:
    """Check (1 - delta_upper) lambda_1(G) - tol <= estimate <= lambda_1(G) + tol."""
    res = wang_lambda1(graph, space, restarts=restarts, seed=seed)
    lower = (1.0 - delta_upper) * res.lambda1
    lower_margin = res.value - lower
    upper_margin = res.lambda1 - res.value
    return SandwichReport(passed=(lower_margin >= -tol and upper_margin >= -tol),
                          lambda1=res.lambda1, wang_estimate=res.value,
                          delta_upper=delta_upper, lower_bound=lower,
                          lower_margin=float(lower_margin),
                          upper_margin=float(upper_margin))
