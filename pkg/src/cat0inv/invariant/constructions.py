"""Structural constructions: tangent-cone scaling sequences and product realizations."""
from __future__ import annotations

import numpy as np

from ..barycenter import SupportedMeasure
from ..spaces import TreeTangentCone
from .profile import DistanceProfile
from .sdp import GramRealization


def scaling_sequence(tangent: TreeTangentCone, nu: SupportedMeasure,
                     n: int) -> SupportedMeasure:
    """Push a measure on a tree's tangent cone back into the tree at scale 1/n.

    Each cone support point (direction, r) maps to the tree point at distance
    r/n from the base point along that direction's representative geodesic.
    On trees the resulting profile is the exact 1/n scaling of the cone
    profile, so the invariant agrees for every n.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if nu.space is not tangent.cone:
        raise ValueError("nu must live on the given tangent cone")
    pts = []
    for p in nu.points:
        if p.is_origin:
            pts.append(tangent.point)
            continue
        if not isinstance(p.direction, int):
            raise ValueError("tangent-cone measures must be supported on rays")
        pts.append(tangent.point_along(p.direction, p.radius / n))
    return SupportedMeasure(tangent.tree, pts, nu.weights)


def product_realization(factor_profiles, factor_weights, factor_grams) -> GramRealization:
    """Direct-sum Gram of factor realizations for a product-space measure.

    All factor data is indexed by the product support (m points each); the
    product Gram is the entrywise sum, its radial distances combine in l2,
    and its Rayleigh quotient never exceeds the worst factor quotient.
    """
    if not factor_profiles:
        raise ValueError("need at least one factor")
    m = factor_profiles[0].size
    weights = np.asarray(factor_weights[0], float)
    for prof, w in zip(factor_profiles, factor_weights):
        if prof.size != m:
            raise ValueError("factor supports must all have the product size")
        if not np.allclose(np.asarray(w, float), weights, atol=1e-12):
            raise ValueError("factor weights must agree with the product weights")
    G = np.zeros((m, m))
    rad_sq = np.zeros(m)
    pw_sq = np.zeros((m, m))
    for prof, gram in zip(factor_profiles, factor_grams):
        Gf = gram.gram if isinstance(gram, GramRealization) else np.asarray(gram, float)
        if Gf.shape != (m, m):
            raise ValueError("factor Gram shapes must match the product size")
        G += Gf
        rad_sq += prof.radial ** 2
        pw_sq += prof.pairwise ** 2
    return GramRealization(G, np.sqrt(rad_sq), np.sqrt(pw_sq))


def product_quotient_bound(factor_profiles, factor_weights, factor_grams):
    """(product quotient, factor quotients); the first is <= max of the rest."""
    combined = product_realization(factor_profiles, factor_weights, factor_grams)
    w = np.asarray(factor_weights[0], float)
    quotients = []
    for prof, gram in zip(factor_profiles, factor_grams):
        Gf = gram.gram if isinstance(gram, GramRealization) else np.asarray(gram, float)
        den = float(np.sum(w * prof.radial ** 2))
        quotients.append(float(w @ Gf @ w) / den if den > 0 else 0.0)
    return combined.rayleigh_quotient(w), quotients
