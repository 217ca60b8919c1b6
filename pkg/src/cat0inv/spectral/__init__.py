"""Graph Laplacian spectra, Wang's nonlinear constant, expanders, and
coarse-embedding obstructions."""

from .expanders import ExpanderCertificate, expander_certificate, random_regular_graph
from .graphs import LabeledGraph, complete_graph, cycle_graph
from .lambda1 import laplacian_lambda1, rayleigh_quotient
from .obstruction import ObstructionReport, embedding_obstruction
from .wang import (PoincareReport, SandwichReport, VertexMap, WangResult,
                   poincare_check, sandwich_check, wang_lambda1, wang_quotient)

__all__ = [
    "ExpanderCertificate", "LabeledGraph", "ObstructionReport", "PoincareReport",
    "SandwichReport", "VertexMap", "WangResult", "complete_graph", "cycle_graph",
    "embedding_obstruction", "expander_certificate", "laplacian_lambda1",
    "poincare_check", "random_regular_graph", "rayleigh_quotient",
    "sandwich_check", "wang_lambda1", "wang_quotient",
]
