"""The graph model of random groups: edge labelings, cycle relators, girth,
and the configurable fixed-point-criterion report.

A labeled oriented graph presents the group on k generators whose relators
are the words read along cycles.  "All cycles" generate the same normal
closure as any generating set of the cycle space; the enumeration below emits
simple cycles up to an explicit length cap and records the cap in its result.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .spectral import LabeledGraph, laplacian_lambda1


@dataclass(frozen=True)
class GeneratorWord:
    """Word in free generators: a sequence of (generator index >= 1, +-1)."""
    letters: tuple

    def __init__(self, letters):
        letters = tuple((int(g), int(s)) for g, s in letters)
        for g, s in letters:
            if g < 1 or s not in (-1, 1):
                raise ValueError(f"bad letter ({g}, {s})")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def free_reduce(self) -> "GeneratorWord":
        out = []
        for g, s in self.letters:
            if out and out[-1] == (g, -s):
                out.pop()
            else:
                out.append((g, s))
        return GeneratorWord(out)

    def inverse(self) -> "GeneratorWord":
        return GeneratorWord([(g, -s) for g, s in reversed(self.letters)])

    def concat(self, other: "GeneratorWord") -> "GeneratorWord":
        return GeneratorWord(self.letters + other.letters)

    def to_text(self) -> str:
        # "s1 S2" syntax: capital marks an inverse letter
        return " ".join((f"s{g}" if s > 0 else f"S{g}") for g, s in self.letters)

    @classmethod
    def from_text(cls, text: str) -> "GeneratorWord":
        letters = []
        for tok in text.split():
            if not tok or tok[0] not in "sS":
                raise ValueError(f"bad word token {tok!r}")
            letters.append((int(tok[1:]), 1 if tok[0] == "s" else -1))
        return cls(letters)


def sample_labels(graph: LabeledGraph, k: int, seed: int = 0) -> LabeledGraph:
    """Orient every edge and draw its label uniformly from the 2k signed
    generators; deterministic under the seed."""
    if k < 1:
        raise ValueError("need at least one generator")
    rng = np.random.default_rng(seed)
    orientation = []
    labels = []
    for u, v in graph.edges:
        orientation.append((u, v) if rng.random() < 0.5 else (v, u))
        g = int(rng.integers(1, k + 1))
        s = 1 if rng.random() < 0.5 else -1
        labels.append(g * s)
    return LabeledGraph(graph.num_vertices, graph.edges,
                        orientation=orientation, labels=labels)


def girth(graph: LabeledGraph):
    """Length of a shortest cycle via BFS from every vertex; math.inf for forests."""
    best = math.inf
    for root in range(graph.num_vertices):
        dist = {root: 0}
        parent_edge = {root: -1}
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                for v, k in graph.adjacency[u]:
                    if k == parent_edge[u]:
                        continue
                    if v in dist:
                        best = min(best, dist[u] + dist[v] + 1)
                    else:
                        dist[v] = dist[u] + 1
                        parent_edge[v] = k
                        nxt.append(v)
            frontier = nxt
    return best


def _simple_cycles_up_to(graph: LabeledGraph, max_len: int):
    """Vertex sequences of simple cycles with length <= max_len, each cycle once,
    rooted at its smallest vertex with its second vertex below its last."""
    cycles = []

    def extend(path, visited):
        u = path[-1]
        root = path[0]
        for v, _ in graph.adjacency[u]:
            if v == root and len(path) >= 3:
                if path[1] < path[-1]:
                    cycles.append(list(path))
                continue
            if v in visited or v < root or len(path) >= max_len:
                continue
            visited.add(v)
            path.append(v)
            extend(path, visited)
            path.pop()
            visited.remove(v)

    for root in range(graph.num_vertices):
        extend([root], {root})
    return cycles


@dataclass
class CycleWordsResult:
    words: list
    max_cycle_length: int
    girth: float
    note: str = ""

    def to_json(self) -> dict:
        return {"words": [w.to_text() for w in self.words],
                "max_cycle_length": self.max_cycle_length,
                "girth": (None if math.isinf(self.girth) else self.girth),
                "note": self.note}


def cycle_words(labeled: LabeledGraph, max_cycle_length: int) -> CycleWordsResult:
    """Relator words read along simple cycles up to the cap, in both traversal
    directions from the canonical start."""
    if labeled.labels is None or labeled.orientation is None:
        raise ValueError("graph must carry labels and orientation; see sample_labels")
    g = girth(labeled)
    if max_cycle_length < g:
        return CycleWordsResult([], max_cycle_length, g,
                                note="cap below girth: no cycles enumerated")
    edge_index = {}
    for k, (u, v) in enumerate(labeled.edges):
        edge_index[(u, v)] = k
        edge_index[(v, u)] = k

    def word_along(seq):
        letters = []
        for i in range(len(seq)):
            a, b = seq[i], seq[(i + 1) % len(seq)]
            k = edge_index[(a, b)]
            tail, head = labeled.orientation[k]
            lab = labeled.labels[k]
            eps = 1 if (a, b) == (tail, head) else -1
            gidx, gsign = abs(lab), (1 if lab > 0 else -1)
            letters.append((gidx, gsign * eps))
        return GeneratorWord(letters)

    words = []
    for seq in _simple_cycles_up_to(labeled, max_cycle_length):
        words.append(word_along(seq))
        words.append(word_along([seq[0]] + seq[1:][::-1]))
    return CycleWordsResult(words, max_cycle_length, g)


# ---------------------------------------------------------------- criterion report
@dataclass
class FixedPointThresholds:
    """Configured cutoffs for the fixed-point criterion; the required girth and
    spectral constants are stated to exist but are not reproduced here, so
    they must be supplied."""
    lambda_min: float
    girth_min: float
    deg_min: int = 2
    deg_max: int = 1000
    delta_max: float = 1.0  # must be < 1 to mean anything

    @classmethod
    def load(cls, path) -> "FixedPointThresholds":
        with open(path) as fh:
            data = json.load(fh)
        return cls(lambda_min=float(data["lambda_min"]),
                   girth_min=float(data["girth_min"]),
                   deg_min=int(data.get("deg_min", 2)),
                   deg_max=int(data.get("deg_max", 1000)),
                   delta_max=float(data.get("delta_max", 1.0)))

    def to_json(self) -> dict:
        return {"lambda_min": self.lambda_min, "girth_min": self.girth_min,
                "deg_min": self.deg_min, "deg_max": self.deg_max,
                "delta_max": self.delta_max}


@dataclass
class FixedPointReport:
    verdict: str
    checks: list = field(default_factory=list)
    note: str = ("hypothesis checklist only; no probability bound is claimed "
                 "(the tail constants are not configured here)")

    @property
    def met(self) -> bool:
        return self.verdict.startswith("met")

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "checks": self.checks, "note": self.note}


def fixed_point_report(graph: LabeledGraph, delta_upper: float,
                       thresholds: FixedPointThresholds,
                       lambda_lower: Optional[float] = None) -> FixedPointReport:
    """Check every criterion hypothesis against the configured thresholds:
    spectral gap, girth, degree bounds, and the invariant bound delta < 1."""
    if thresholds is None:
        raise ValueError("threshold configuration is required")
    if lambda_lower is None:
        lambda_lower, _ = laplacian_lambda1(graph)
    g = girth(graph)
    dmin = int(graph.degrees.min())
    dmax = int(graph.degrees.max())
    checks = [
        {"hypothesis": "spectral gap", "required": f">= {thresholds.lambda_min}",
         "observed": lambda_lower, "ok": bool(lambda_lower >= thresholds.lambda_min)},
        {"hypothesis": "girth", "required": f">= {thresholds.girth_min}",
         "observed": (None if math.isinf(g) else g),
         "ok": bool(g >= thresholds.girth_min)},
        {"hypothesis": "degree bounds",
         "required": f"[{thresholds.deg_min}, {thresholds.deg_max}]",
         "observed": [dmin, dmax],
         "ok": bool(thresholds.deg_min <= dmin and dmax <= thresholds.deg_max)},
        {"hypothesis": "invariant bound", "required": f"<= {thresholds.delta_max} < 1",
         "observed": delta_upper,
         "ok": bool(delta_upper <= thresholds.delta_max and thresholds.delta_max < 1.0)},
    ]
    failed = [c["hypothesis"] for c in checks if not c["ok"]]
    if failed:
        verdict = "not met: " + ", ".join(failed)
    else:
        verdict = "met (conditional on configured constants)"
    return FixedPointReport(verdict=verdict, checks=checks)
