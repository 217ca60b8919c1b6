"""First positive eigenvalue of the degree-normalized graph Laplacian.

The walk operator f -> f - sum_{u ~ v} f(u)/deg(u) is not symmetric; it is
diagonalized through the cospectral symmetric normalization
I - D^{-1/2} A D^{-1/2}, and the eigenvalue is cross-checked against the
variational quotient of the computed eigenfunction.
"""
from __future__ import annotations

import numpy as np

from .graphs import LabeledGraph


def _adjacency(graph: LabeledGraph):
    n = graph.num_vertices
    A = np.zeros((n, n))
    for u, v in graph.edges:
        A[u, v] = A[v, u] = 1.0
    return A


def rayleigh_quotient(graph: LabeledGraph, f) -> float:
    """sum_E (f_u - f_v)^2 / sum_V deg(v) (f_v - fbar)^2 with the
    degree-weighted mean fbar."""
    f = np.asarray(f, float)
    num = sum((f[u] - f[v]) ** 2 for u, v in graph.edges)
    deg = graph.degrees
    fbar = float(deg @ f) / float(deg.sum())
    den = float(deg @ (f - fbar) ** 2)
    if den <= 1e-300:
        raise ValueError("constant function has no Rayleigh quotient")
    return float(num / den)


def laplacian_lambda1(graph: LabeledGraph, check_tol: float = 1e-9):
    """(lambda_1, eigenfunction); raises on disconnected input."""
    if not graph.is_connected():
        raise ValueError("lambda_1 requires a connected graph")
    if graph.num_vertices < 2:
        raise ValueError("need at least two vertices")
    A = _adjacency(graph)
    deg = graph.degrees.astype(float)
    dinv = 1.0 / np.sqrt(deg)
    L = np.eye(graph.num_vertices) - (dinv[:, None] * A) * dinv[None, :]
    evals, evecs = np.linalg.eigh(L)
    lam = float(evals[1])
    f = dinv * evecs[:, 1]   # eigenfunction of the walk Laplacian
    quot = rayleigh_quotient(graph, f)
    if abs(quot - lam) > check_tol * max(1.0, lam):
        raise RuntimeError(f"variational cross-check failed: {quot} vs {lam}")
    return lam, f
