"""Finite l2-products of model spaces. Points are tuples of factor points."""
from __future__ import annotations

import math


class ProductSpace:
    kind = "product"

    def __init__(self, factors):
        factors = list(factors)
        if not factors:
            raise ValueError("product needs at least one factor")
        self.factors = factors

    def canonical(self, p):
        p = tuple(p)
        if len(p) != len(self.factors):
            raise ValueError(f"point arity {len(p)} != factor count {len(self.factors)}")
        return tuple(f.canonical(x) for f, x in zip(self.factors, p))

    def distance(self, p, q) -> float:
        p = self.canonical(p)
        q = self.canonical(q)
        return math.sqrt(sum(f.distance(x, y) ** 2
                             for f, x, y in zip(self.factors, p, q)))

    def points_equal(self, p, q, tol: float = 1e-12) -> bool:
        return self.distance(p, q) <= tol

    def geodesic_eval(self, p, q):
        p = self.canonical(p)
        q = self.canonical(q)
        evs = [f.geodesic_eval(x, y) for f, x, y in zip(self.factors, p, q)]
        return lambda t: tuple(ev(t) for ev in evs)

    def random_point(self, rng, scale: float = 1.0):
        return tuple(f.random_point(rng, scale) for f in self.factors)

    def point_to_json(self, p):
        p = self.canonical(p)
        return [f.point_to_json(x) for f, x in zip(self.factors, p)]

    def point_from_json(self, data):
        return tuple(f.point_from_json(x) for f, x in zip(self.factors, data))

    def to_json(self) -> dict:
        return {"schema": 1, "kind": "product",
                "factors": [f.to_json() for f in self.factors]}

    def __repr__(self):
        return f"ProductSpace({len(self.factors)} factors)"
