"""Displacement bounds obstructing coarse embeddings of spectral families.

If every edge image has length at most L and the target quotient is bounded
below by lambda, then sum_E d^2 <= |E| L^2 combined with the quotient bound
forces the degree-weighted RMS displacement of the images from their
barycenter below B = L / sqrt(2 lambda).  Images of a graph therefore
collapse into a ball of fixed size while graph distances grow, contradicting
any lower modulus rho_1 once rho_1(median distance) exceeds B.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .graphs import LabeledGraph


@dataclass
class ObstructionReport:
    displacement_bound: float
    lambda_lower: float
    lipschitz_bound: float
    median_distance: Optional[float] = None
    median_exact: bool = True
    rho1_at_median: Optional[float] = None
    contradiction: Optional[bool] = None

    def to_json(self) -> dict:
        return {"displacement_bound": self.displacement_bound,
                "lambda_lower": self.lambda_lower,
                "lipschitz_bound": self.lipschitz_bound,
                "median_distance": self.median_distance,
                "median_exact": self.median_exact,
                "rho1_at_median": self.rho1_at_median,
                "contradiction": self.contradiction}


def embedding_obstruction(graph: Optional[LabeledGraph], lambda_lower: float,
                          lipschitz_bound: float,
                          rho1: Optional[Callable[[float], float]] = None,
                          median_seed: int = 0) -> ObstructionReport:
    """B = L / sqrt(2 lambda); with a graph and a lower modulus rho_1, also
    report whether rho_1(median pairwise distance) > B, contradicting the
    coarse-embedding moduli."""
    if lambda_lower <= 0:
        raise ValueError("lambda_lower must be positive")
    if lipschitz_bound <= 0:
        raise ValueError("lipschitz_bound must be positive")
    B = lipschitz_bound / math.sqrt(2.0 * lambda_lower)
    report = ObstructionReport(displacement_bound=B, lambda_lower=lambda_lower,
                               lipschitz_bound=lipschitz_bound)
    if graph is not None:
        med, exact = graph.median_pairwise_distance(seed=median_seed)
        report.median_distance = med
        report.median_exact = exact
        if rho1 is not None:
            report.rho1_at_median = float(rho1(med))
            report.contradiction = bool(report.rho1_at_median > B)
    return report
