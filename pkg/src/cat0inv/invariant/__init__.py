"""The Izeki-Nayatani invariant of finitely supported measures."""

from .checks import RealizationReport, realization_check
from .constructions import product_quotient_bound, product_realization, scaling_sequence
from .estimate import DeltaAtPointEstimate, SamplerConfig, delta_at_point_estimate
from .multistart import delta_multistart
from .profile import DistanceProfile, distance_profile
from .sdp import DeltaResult, GramRealization, SolverError, delta_sdp

__all__ = [
    "DeltaAtPointEstimate", "DeltaResult", "DistanceProfile", "GramRealization",
    "RealizationReport", "SamplerConfig", "SolverError", "delta_at_point_estimate",
    "delta_multistart", "delta_sdp", "distance_profile", "product_quotient_bound",
    "product_realization", "realization_check", "scaling_sequence",
]
