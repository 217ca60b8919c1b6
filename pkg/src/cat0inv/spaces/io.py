"""JSON serialization for spaces (versioned, 'kind'-discriminated)."""
from __future__ import annotations

import json

from .cone import EuclideanCone
from .euclidean import EuclideanSpace
from .finite_metric import FiniteMetricSpace
from .product import ProductSpace
from .tree import MetricTree


def space_from_json(data: dict):
    kind = data.get("kind")
    if kind == "euclidean":
        return EuclideanSpace(int(data["dimension"]))
    if kind == "tree":
        return MetricTree(int(data["num_vertices"]),
                          [(int(u), int(v), float(l)) for u, v, l in data["edges"]])
    if kind == "cone":
        return EuclideanCone(FiniteMetricSpace.from_json(data["base"]))
    if kind == "product":
        return ProductSpace([space_from_json(f) for f in data["factors"]])
    if kind == "finite":
        return FiniteMetricSpace.from_json(data)
    raise ValueError(f"unknown space kind {kind!r}")


def load_space(path):
    with open(path) as fh:
        return space_from_json(json.load(fh))


def dump_space(space, path):
    with open(path, "w") as fh:
        json.dump(space.to_json(), fh, indent=2, sort_keys=True)
        fh.write("\n")
