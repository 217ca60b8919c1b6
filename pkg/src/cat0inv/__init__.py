"""cat0inv: geometric invariants of CAT(0) model spaces.

Computes barycenters, the Izeki-Nayatani invariant of finitely supported
measures, Wang's nonlinear spectral constant of graphs mapped into model
spaces, separation/doubling regularity data, and graph-model random-group
reports, on concrete spaces: Euclidean spaces, metric trees, Euclidean cones
over finite metric spaces, and finite l2-products.
"""

__version__ = "0.1.0"

from . import barycenter, invariant, randomgroups, regularity, spaces, spectral

__all__ = ["barycenter", "invariant", "randomgroups", "regularity", "spaces",
           "spectral", "__version__"]
