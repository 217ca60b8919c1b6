"""Certified lower bounds for the pointed invariant delta(Y, p).

The pointed invariant is a supremum over measures whose barycenter is p; we
only ever report the best certified witness found by sampling, never the
supremum itself.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..barycenter import SupportedMeasure, UncertifiedBarycenterError, barycenter
from ..spaces import EuclideanCone, EuclideanSpace, MetricTree, ProductSpace
from .profile import distance_profile
from .sdp import delta_sdp


@dataclass
class SamplerConfig:
    num_samples: int = 40
    seed: int = 0
    max_support: int = 8
    radius: float = 1.0
    bar_tol: float = 1e-7
    include_canonical: bool = True


@dataclass
class DeltaAtPointEstimate:
    value: Optional[float]       # None means "no witness": no sampled measure certified
    witness: Optional[SupportedMeasure]
    num_certified: int
    num_samples: int
    note: str = ""
    values: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"value": self.value, "num_certified": self.num_certified,
                "num_samples": self.num_samples, "note": self.note}


def _euclidean_sample(space, p, rng, cfg):
    m = int(rng.integers(2, cfg.max_support + 1))
    pts = rng.normal(scale=cfg.radius, size=(m, space.dimension))
    w = rng.random(m) + 0.1
    w /= w.sum()
    pts = pts - w @ pts + space.canonical(p)   # translate the mean onto p
    return SupportedMeasure(space, list(pts), w)


def _tree_sample(tree, p, rng, cfg):
    dirs = tree.directions_at(p)
    if len(dirs) < 2:
        return None
    k = min(len(dirs), max(2, int(rng.integers(2, 6))))
    chosen = rng.choice(len(dirs), size=k, replace=False)
    pts, moments = [], []
    from ..spaces import GeodesicSegment
    for idx in chosen:
        _, rep, length = dirs[idx]
        if length <= 1e-12:
            return None
        r = float(rng.uniform(0.2, 1.0)) * length
        seg = GeodesicSegment(tree, p, rep)
        pts.append(seg.eval(r / seg.length))
        moments.append(r)
    # equal branch moments t_i * d_i make p the stationary point
    w = np.array([1.0 / m for m in moments])
    w /= w.sum()
    return SupportedMeasure(tree, pts, w)


def _cone_sample(cone, p, rng, cfg):
    if not cone.canonical(p).is_origin:
        return None
    m = min(cone.base.size, cfg.max_support)
    idxs = rng.choice(cone.base.size, size=m, replace=False)
    radii = rng.uniform(0.3, cfg.radius, size=m)
    w = rng.random(m) + 0.2
    w /= w.sum()
    return SupportedMeasure(cone, [cone.point(int(i), float(r))
                                   for i, r in zip(idxs, radii)], w)


def _canonical_cone_measure(cone):
    """Uniform unit-radius measure over every base direction."""
    n = cone.base.size
    return SupportedMeasure(cone, [cone.point(i, 1.0) for i in range(n)],
                            np.full(n, 1.0 / n))


def delta_at_point_estimate(space, p, config: SamplerConfig = None) -> DeltaAtPointEstimate:
    """Max of delta over sampled measures certified to have barycenter p.

    A certified lower bound for the pointed invariant; if no sampled measure
    certifies, reports "no witness" (value None).
    """
    cfg = config or SamplerConfig()
    rng = np.random.default_rng(cfg.seed)
    best = None
    witness = None
    values = []
    certified = 0
    samples = 0
    candidates = []
    if cfg.include_canonical and isinstance(space, EuclideanCone):
        candidates.append(_canonical_cone_measure(space))
    while samples + len(candidates) < cfg.num_samples:
        if isinstance(space, EuclideanSpace):
            mu = _euclidean_sample(space, p, rng, cfg)
        elif isinstance(space, MetricTree):
            mu = _tree_sample(space, p, rng, cfg)
        elif isinstance(space, EuclideanCone):
            mu = _cone_sample(space, p, rng, cfg)
        elif isinstance(space, ProductSpace):
            mu = None  # sampled through single-factor variation below
        else:
            raise ValueError(f"unsupported space {space!r}")
        if isinstance(space, ProductSpace):
            f_idx = int(rng.integers(0, len(space.factors)))
            sub = delta_at_point_estimate(space.factors[f_idx], p[f_idx],
                                          SamplerConfig(num_samples=1,
                                                        seed=int(rng.integers(2**31)),
                                                        max_support=cfg.max_support,
                                                        radius=cfg.radius))
            samples += 1
            if sub.value is not None and sub.witness is not None:
                pts = [tuple(q if i == f_idx else p[i]
                             for i in range(len(space.factors)))
                       for q in sub.witness.points]
                mu = SupportedMeasure(space, pts, sub.witness.weights)
                candidates.append(mu)
            continue
        samples += 1
        if mu is not None:
            candidates.append(mu)
    for mu in candidates:
        if mu.distinct_support_count() < 2:
            continue
        try:
            bar = barycenter(mu)
        except UncertifiedBarycenterError:
            continue
        if space.distance(bar, p) > cfg.bar_tol:
            continue
        certified += 1
        val = delta_sdp(distance_profile(mu, bar=bar), mu.weights).value
        values.append(val)
        if best is None or val > best:
            best, witness = val, mu
    if best is None:
        return DeltaAtPointEstimate(None, None, 0, samples,
                                    note="no witness: no sampled measure certified")
    return DeltaAtPointEstimate(best, witness, certified, samples,
                                note="certified lower bound, not the supremum",
                                values=values)
