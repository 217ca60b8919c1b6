"""Covering numbers, doubling constants, and the separation property P.

All computations are exact finite-scale set covers: branch-and-bound up to 24
points, greedy beyond that with an explicit upper-bound flag.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .spaces import FiniteMetricSpace

EXACT_COVER_LIMIT = 24


@dataclass(frozen=True)
class PropertyPTriple:
    """Parameters (theta, alpha, eps): every pair at distance >= theta must be
    eps-separated by at least an alpha fraction of the witness set."""
    theta: float
    alpha: float
    eps: float

    def __post_init__(self):
        if not 0 < self.theta < math.pi / 2:
            raise ValueError("theta must lie in (0, pi/2)")
        if not 0 < self.alpha <= 1:
            raise ValueError("alpha must lie in (0, 1]")
        if self.eps <= 0:
            raise ValueError("eps must be positive")

    def to_json(self) -> dict:
        return {"theta": self.theta, "alpha": self.alpha, "eps": self.eps}


# ---------------------------------------------------------------- set cover
def _greedy_cover(universe, sets):
    uncovered = set(universe)
    chosen = []
    while uncovered:
        best = max(range(len(sets)), key=lambda k: len(uncovered & sets[k]))
        if not uncovered & sets[best]:
            raise ValueError("universe not coverable by the given sets")
        chosen.append(best)
        uncovered -= sets[best]
    return chosen


def _exact_cover(universe, sets):
    """Minimum set cover by branch and bound on the least-covered element."""
    universe = frozenset(universe)
    greedy = _greedy_cover(universe, sets)
    best = [len(greedy), list(greedy)]
    order = sorted(range(len(sets)), key=lambda k: -len(sets[k]))

    def recurse(uncovered, chosen):
        if not uncovered:
            if len(chosen) < best[0]:
                best[0] = len(chosen)
                best[1] = list(chosen)
            return
        if len(chosen) + 1 >= best[0]:
            return
        # simple lower bound: ceil(|uncovered| / largest set size)
        biggest = max(len(sets[k] & uncovered) for k in order)
        if biggest == 0:
            return
        if len(chosen) + math.ceil(len(uncovered) / biggest) >= best[0]:
            return
        pivot = min(uncovered, key=lambda e: sum(1 for k in order if e in sets[k]))
        for k in order:
            if pivot in sets[k]:
                recurse(uncovered - sets[k], chosen + [k])

    recurse(set(universe), [])
    return best[1]


@dataclass
class CoverResult:
    count: int
    centers: list
    radius: float
    exact: bool

    def to_json(self) -> dict:
        return {"count": self.count, "centers": self.centers,
                "radius": self.radius, "exact": self.exact}


def covering_number(X: FiniteMetricSpace, r: float) -> CoverResult:
    """Minimum number of open r-balls centered at points of X covering X.

    Exact for |X| <= 24; greedy (flagged as an upper bound) beyond.
    """
    if r <= 0:
        raise ValueError("radius must be positive")
    balls = [set(X.open_ball(i, r).tolist()) for i in range(X.size)]
    universe = range(X.size)
    if X.size <= EXACT_COVER_LIMIT:
        chosen = _exact_cover(universe, balls)
        return CoverResult(len(chosen), sorted(chosen), r, True)
    chosen = _greedy_cover(universe, balls)
    return CoverResult(len(chosen), sorted(chosen), r, False)


@dataclass
class DoublingResult:
    constant: int
    worst_center: int
    worst_radius: float
    exact: bool

    def to_json(self) -> dict:
        return {"constant": self.constant, "worst_center": self.worst_center,
                "worst_radius": self.worst_radius, "exact": self.exact}


def doubling_constant(X: FiniteMetricSpace) -> DoublingResult:
    """Max over centers x and realized radii r of the minimum number of closed
    r/2-balls (centers restricted to points of X) covering the closed r-ball
    around x."""
    radii = X.realized_distances()
    exact = X.size <= EXACT_COVER_LIMIT
    worst = (1, 0, 0.0)
    for r in radii:
        half_balls = [set(X.closed_ball(z, r / 2.0).tolist()) for z in range(X.size)]
        for x in range(X.size):
            target = set(X.closed_ball(x, r).tolist())
            restricted = [b & target for b in half_balls]
            if exact:
                chosen = _exact_cover(target, restricted)
            else:
                chosen = _greedy_cover(target, restricted)
            if len(chosen) > worst[0]:
                worst = (len(chosen), x, float(r))
    return DoublingResult(worst[0], worst[1], worst[2], exact)


# ---------------------------------------------------------------- property P
@dataclass
class PropertyPReport:
    passed: bool
    triple: PropertyPTriple
    witness: list
    num_pairs_checked: int
    failures: list = field(default_factory=list)
    worst_fraction: float = 1.0
    note: str = ""

    def to_json(self) -> dict:
        return {"passed": self.passed, "triple": self.triple.to_json(),
                "witness": self.witness, "num_pairs_checked": self.num_pairs_checked,
                "failures": self.failures[:50], "worst_fraction": self.worst_fraction,
                "note": self.note}


def check_property_p(X: FiniteMetricSpace, S, triple: PropertyPTriple,
                     tol: float = 1e-12) -> PropertyPReport:
    """Verify #{s in S : |d(x,s) - d(y,s)| >= eps} >= alpha #S for every pair
    x, y with d(x, y) >= theta."""
    S = sorted(int(s) for s in S)
    if not S:
        raise ValueError("witness set must be nonempty")
    report = PropertyPReport(passed=True, triple=triple, witness=S, num_pairs_checked=0)
    need = triple.alpha * len(S) - tol
    for x in range(X.size):
        for y in range(x + 1, X.size):
            if X.d(x, y) < triple.theta:
                continue
            report.num_pairs_checked += 1
            count = sum(1 for s in S
                        if abs(X.d(x, s) - X.d(y, s)) >= triple.eps - tol)
            frac = count / len(S)
            report.worst_fraction = min(report.worst_fraction, frac)
            if count < need:
                report.failures.append({"pair": [x, y], "count": count,
                                        "needed": triple.alpha * len(S)})
    report.passed = not report.failures
    return report


def property_p_witness_from_net(X: FiniteMetricSpace):
    """Witness from a pi/12-net: S = net centers, triple (pi/3, 2/N, pi/6).

    Any two points at distance >= pi/3 are pi/6-separated by the two centers
    covering them, so the output always passes its own check.
    """
    cover = covering_number(X, math.pi / 12.0)
    N = cover.count
    note = ""
    alpha = 2.0 / N
    if alpha > 1.0:
        alpha = 1.0
        note = "alpha = 2/N exceeds 1 for a 1-net; clamped (vacuous: diameter < pi/3)"
    triple = PropertyPTriple(math.pi / 3.0, alpha, math.pi / 6.0)
    report = check_property_p(X, cover.centers, triple)
    report.note = (note or report.note)
    return cover.centers, triple, report


def doubling_p_triple(N: int, exponent: int = 2):
    """Separation triple produced by the two-halvings covering argument for a
    space whose tangent-cone doubling constant is at most N: (pi/3, 2/N^e, pi/6)."""
    if N < 1:
        raise ValueError("doubling constant must be at least 1")
    note = ""
    alpha = 2.0 / float(N) ** exponent
    if alpha > 1.0:
        alpha = 1.0
        note = "alpha clamped to 1 (a 1-doubling space is a point; vacuous)"
    return PropertyPTriple(math.pi / 3.0, alpha, math.pi / 6.0), note
