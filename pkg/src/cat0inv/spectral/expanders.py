"""Random regular graphs (pairing model) and expander-family certificates."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graphs import LabeledGraph
from .lambda1 import laplacian_lambda1


def random_regular_graph(n: int, d: int, seed: int = 0,
                         max_attempts: int = 10000) -> LabeledGraph:
    """d-regular simple graph on n vertices via the pairing model: match nd
    stubs uniformly, reject matchings with loops or repeated edges."""
    if (n * d) % 2 != 0:
        raise ValueError("n * d must be even")
    if d < 3:
        raise ValueError("degree must be at least 3")
    if d >= n:
        raise ValueError("degree must be below the vertex count")
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        stubs = np.repeat(np.arange(n), d)
        rng.shuffle(stubs)
        pairs = stubs.reshape(-1, 2)
        edges = set()
        ok = True
        for u, v in pairs:
            u, v = int(u), int(v)
            if u == v or (min(u, v), max(u, v)) in edges:
                ok = False
                break
            edges.add((min(u, v), max(u, v)))
        if ok:
            return LabeledGraph(n, sorted(edges))
    raise RuntimeError(f"pairing model failed within {max_attempts} attempts")


@dataclass
class ExpanderCertificate:
    passed: bool
    degree_bound: int
    lambda_required: float
    sizes: list = field(default_factory=list)
    lambda1_values: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"passed": self.passed, "degree_bound": self.degree_bound,
                "lambda_required": self.lambda_required, "sizes": self.sizes,
                "lambda1_values": self.lambda1_values, "failures": self.failures}


def expander_certificate(graphs, d: int, lam: float) -> ExpanderCertificate:
    """Check the three defining facts on a finite prefix of a family: sizes
    strictly increase, deg(v) <= d everywhere, and lambda_1 >= lam on every
    member."""
    cert = ExpanderCertificate(passed=True, degree_bound=d, lambda_required=lam)
    prev = 0
    for idx, g in enumerate(graphs):
        cert.sizes.append(g.num_vertices)
        if g.num_vertices <= prev:
            cert.failures.append({"graph": idx, "property": "growth",
                                  "detail": f"|V|={g.num_vertices} after {prev}"})
        prev = g.num_vertices
        dmax = int(g.degrees.max())
        if dmax > d:
            cert.failures.append({"graph": idx, "property": "degree",
                                  "detail": f"max degree {dmax} > {d}"})
        lam1, _ = laplacian_lambda1(g)
        cert.lambda1_values.append(lam1)
        if lam1 < lam:
            cert.failures.append({"graph": idx, "property": "spectral_gap",
                                  "detail": f"lambda_1={lam1:.6g} < {lam}"})
    cert.passed = not cert.failures
    return cert
