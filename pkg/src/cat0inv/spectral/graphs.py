"""Finite combinatorial graphs with optional orientation and edge labels."""
from __future__ import annotations

import json

import numpy as np


class LabeledGraph:
    """Simple undirected graph; edges may carry an orientation and a signed
    generator label (+g or -g for the g-th generator's inverse)."""

    def __init__(self, num_vertices: int, edges, orientation=None, labels=None):
        n = int(num_vertices)
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        canon = []
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            canon.append(key)
        self.num_vertices = n
        self.edges = canon
        self.adjacency = [[] for _ in range(n)]
        for k, (u, v) in enumerate(canon):
            self.adjacency[u].append((v, k))
            self.adjacency[v].append((u, k))
        self.degrees = np.array([len(a) for a in self.adjacency])
        if orientation is not None:
            orientation = [tuple(map(int, o)) for o in orientation]
            if len(orientation) != len(canon):
                raise ValueError("orientation must cover every edge")
            for (t, h), (u, v) in zip(orientation, canon):
                if {t, h} != {u, v}:
                    raise ValueError(f"orientation ({t},{h}) does not match edge ({u},{v})")
        self.orientation = orientation
        if labels is not None:
            labels = [int(l) for l in labels]
            if len(labels) != len(canon):
                raise ValueError("labels must cover every edge")
            if any(l == 0 for l in labels):
                raise ValueError("labels are nonzero signed generator indices")
        self.labels = labels

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def is_connected(self) -> bool:
        if self.num_vertices == 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v, _ in self.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.num_vertices

    def bfs_distances(self, source: int):
        dist = np.full(self.num_vertices, -1, dtype=int)
        dist[source] = 0
        frontier = [source]
        while frontier:
            nxt = []
            for u in frontier:
                for v, _ in self.adjacency[u]:
                    if dist[v] < 0:
                        dist[v] = dist[u] + 1
                        nxt.append(v)
            frontier = nxt
        return dist

    def median_pairwise_distance(self, max_exact: int = 2000, seed: int = 0):
        """Median of all finite pairwise graph distances; exact BFS from every
        vertex up to max_exact vertices, sampled sources beyond."""
        n = self.num_vertices
        rng = np.random.default_rng(seed)
        sources = range(n) if n <= max_exact else rng.choice(n, size=max_exact, replace=False)
        vals = []
        exact = n <= max_exact
        for s in sources:
            d = self.bfs_distances(int(s))
            vals.extend(int(x) for x in d[d > 0])
        return float(np.median(vals)), exact

    # ------------------------------------------------------------- io
    def to_json(self) -> dict:
        data = {"schema": 1, "num_vertices": self.num_vertices,
                "edges": [[u, v] for u, v in self.edges]}
        if self.orientation is not None:
            data["orientation"] = [[t, h] for t, h in self.orientation]
        if self.labels is not None:
            data["labels"] = self.labels
        return data

    @classmethod
    def from_json(cls, data: dict) -> "LabeledGraph":
        return cls(data["num_vertices"], data["edges"],
                   orientation=data.get("orientation"), labels=data.get("labels"))

    def to_edge_list_text(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges)

    @classmethod
    def from_edge_list_text(cls, text: str) -> "LabeledGraph":
        edges = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            u, v = line.split()
            edges.append((int(u), int(v)))
        n = max(max(u, v) for u, v in edges) + 1 if edges else 1
        return cls(n, edges)

    @classmethod
    def load(cls, path) -> "LabeledGraph":
        text = open(path).read()
        stripped = text.lstrip()
        if stripped.startswith("{"):
            return cls.from_json(json.loads(text))
        return cls.from_edge_list_text(text)

    def __repr__(self):
        return f"LabeledGraph(n={self.num_vertices}, m={self.num_edges})"


def cycle_graph(n: int) -> LabeledGraph:
    return LabeledGraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> LabeledGraph:
    return LabeledGraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
