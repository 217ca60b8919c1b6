"""Finite metric spaces given by explicit distance matrices."""
from __future__ import annotations

import numpy as np


class FiniteMetricSpace:
    """A finite metric space: points are indices 0..size-1, distances a matrix.

    The matrix must be symmetric with zero diagonal, finite nonnegative
    entries, and satisfy the triangle inequality within ``tol``.
    """

    def __init__(self, dist, tol: float = 1e-12):
        dist = np.array(dist, dtype=float)
        if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
            raise ValueError("distance matrix must be square")
        if dist.shape[0] == 0:
            raise ValueError("finite metric space must contain at least one point")
        if not np.all(np.isfinite(dist)):
            raise ValueError("distance matrix entries must be finite")
        if np.any(dist < 0):
            raise ValueError("distances must be nonnegative")
        if np.any(np.abs(np.diag(dist)) > tol):
            raise ValueError("distance matrix diagonal must be zero")
        if np.any(np.abs(dist - dist.T) > tol):
            raise ValueError("distance matrix must be symmetric")
        dist = 0.5 * (dist + dist.T)
        np.fill_diagonal(dist, 0.0)
        # triangle inequality: d(i,k) <= d(i,j) + d(j,k) for all j
        n = dist.shape[0]
        for j in range(n):
            slack = dist[:, None, j] + dist[None, j, :] - dist
            if np.min(slack) < -tol:
                raise ValueError("distance matrix violates the triangle inequality")
        self.dist = dist
        self.dist.setflags(write=False)

    @property
    def size(self) -> int:
        return self.dist.shape[0]

    def diameter(self) -> float:
        return float(np.max(self.dist))

    def d(self, i: int, j: int) -> float:
        return float(self.dist[i, j])

    def open_ball(self, center: int, r: float):
        """Indices of all points strictly within r of the center."""
        return np.where(self.dist[center] < r)[0]

    def closed_ball(self, center: int, r: float):
        return np.where(self.dist[center] <= r)[0]

    def realized_distances(self):
        """Sorted positive distances occurring in the space."""
        vals = np.unique(self.dist[np.triu_indices(self.size, 1)])
        return vals[vals > 0]

    def to_json(self) -> dict:
        # distances carry 12 significant digits in serialized form
        return {"schema": 1, "kind": "finite",
                "dist": [[float(f"{x:.12g}") for x in row] for row in self.dist]}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteMetricSpace":
        return cls(np.array(data["dist"], dtype=float))

    def __repr__(self):
        return f"FiniteMetricSpace(size={self.size})"


def graph_metric(num_vertices: int, edges, edge_length: float = 1.0) -> FiniteMetricSpace:
    """Shortest-path metric of an unweighted connected graph, scaled by edge_length."""
    n = num_vertices
    big = np.inf
    dist = np.full((n, n), big)
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    for s in range(n):
        dist[s, s] = 0.0
        frontier = [s]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if dist[s, w] > d:
                        dist[s, w] = d
                        nxt.append(w)
            frontier = nxt
    if not np.all(np.isfinite(dist)):
        raise ValueError("graph is not connected")
    return FiniteMetricSpace(dist * edge_length)


def heawood_base(edge_length: float = np.pi / 3) -> FiniteMetricSpace:
    """Shortest-path metric of the Heawood graph (point-line incidences of the
    seven-point projective plane), the standard 14-point link model."""
    edges = []
    for j in range(7):
        for off in (0, 1, 3):
            edges.append((j, 7 + ((j + off) % 7)))
    return graph_metric(14, edges, edge_length)
