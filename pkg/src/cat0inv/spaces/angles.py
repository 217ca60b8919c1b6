"""Comparison angles and Alexandrov angles."""
from __future__ import annotations

import math

import numpy as np

from .cone import EuclideanCone
from .euclidean import EuclideanSpace
from .geodesic import GeodesicSegment
from .tree import MetricTree


def comparison_angle(space, p, q, r) -> float:
    """Angle at p of the flat comparison triangle of (p, q, r).

    arccos of (d(p,q)^2 + d(p,r)^2 - d(q,r)^2) / (2 d(p,q) d(p,r)),
    clamped to [-1, 1] before arccos.
    """
    dpq = space.distance(p, q)
    dpr = space.distance(p, r)
    if dpq <= 1e-15 or dpr <= 1e-15:
        raise ValueError("comparison angle undefined: q or r coincides with p")
    dqr = space.distance(q, r)
    cosv = (dpq ** 2 + dpr ** 2 - dqr ** 2) / (2.0 * dpq * dpr)
    return math.acos(min(1.0, max(-1.0, cosv)))


def _cone_initial_direction(cone: EuclideanCone, p, q):
    """Initial direction of the geodesic p -> q at a non-origin cone point p,
    as (sector key, angle from the outward ray direction)."""
    psi = cone.angle(p.direction, q.direction)
    if psi >= math.pi - 1e-12:
        # geodesic runs down the ray through the origin
        return ("ray", math.pi)
    # unroll: p = (r_p, 0), q = (r_q cos psi, r_q sin psi); angle of q - p
    # against the outward direction (1, 0) at p
    w = np.array([q.radius * math.cos(psi) - p.radius, q.radius * math.sin(psi)])
    phi = math.atan2(w[1], w[0])
    if phi <= 1e-12 or phi >= math.pi - 1e-12 or psi <= 1e-12:
        return ("ray", 0.0 if phi <= 1e-12 else math.pi)
    total, segs = cone._route(p.direction, q.direction)
    first = segs[0]
    probe = first[1](min(first[0] / 2.0, first[0]))
    return (("sector", _sector_key(cone, p.direction, probe)), phi)


def _sector_key(cone, d1, d2):
    """Identity of the 2-dim sector containing both directions."""
    exits = {a for a, _ in cone._exits(d1)} | {a for a, _ in cone._exits(d2)}
    return tuple(sorted(exits))


def _cone_angle_between_initial(dir1, dir2) -> float:
    (k1, phi1), (k2, phi2) = dir1, dir2
    if k1 == "ray" or k2 == "ray" or k1 == k2:
        # ray directions (phi in {0, pi}) are shared by every sector
        return abs(phi1 - phi2)
    # distinct sectors share only the ray: routes via the outward (phi=0)
    # or inward (phi=pi) direction
    return min(math.pi, phi1 + phi2, (math.pi - phi1) + (math.pi - phi2))


def alexandrov_angle(space, p, q, r, shrink_steps: int = 40, tol: float = 1e-7) -> float:
    """Upper angle at p between the geodesics to q and to r.

    Exact for trees (germs are discrete: 0 or pi), Euclidean space, and cones;
    evaluated as a shrinking limit of comparison angles elsewhere.
    """
    if space.distance(p, q) <= 1e-15 or space.distance(p, r) <= 1e-15:
        raise ValueError("angle undefined: q or r coincides with p")
    if isinstance(space, EuclideanSpace):
        u = space.canonical(q) - space.canonical(p)
        v = space.canonical(r) - space.canonical(p)
        cosv = float(u @ v / (np.linalg.norm(u) * np.linalg.norm(v)))
        return math.acos(min(1.0, max(-1.0, cosv)))
    if isinstance(space, MetricTree):
        dq = space.direction_at(p, q)
        dr = space.direction_at(p, r)
        return 0.0 if dq == dr else math.pi
    if isinstance(space, EuclideanCone):
        p = space.canonical(p)
        q = space.canonical(q)
        r = space.canonical(r)
        if p.is_origin:
            return space.angle(q.direction, r.direction)
        return _cone_angle_between_initial(_cone_initial_direction(space, p, q),
                                           _cone_initial_direction(space, p, r))
    # generic shrinking schedule t_k = 2^-k along both geodesics
    gq = GeodesicSegment(space, p, q)
    gr = GeodesicSegment(space, p, r)
    prev = None
    t = 1.0
    for _ in range(shrink_steps):
        a = comparison_angle(space, p, gq.eval(t), gr.eval(t))
        if prev is not None and abs(a - prev) < tol:
            return a
        prev = a
        t *= 0.5
    return prev
