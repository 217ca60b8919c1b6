"""CAT(0) model spaces: Euclidean spaces, metric trees, Euclidean cones over
finite metric spaces, and finite l2-products."""

from .angles import alexandrov_angle, comparison_angle
from .cone import ArcDirection, ConePoint, EuclideanCone
from .euclidean import EuclideanSpace
from .finite_metric import FiniteMetricSpace, graph_metric, heawood_base
from .geodesic import GeodesicSegment, distance, geodesic, scale_cone_point
from .io import dump_space, load_space, space_from_json
from .product import ProductSpace
from .tangent import TreeTangentCone, tree_tangent_cone
from .tree import MetricTree, TreePoint, tripod
from .validate import CatZeroReport, verify_cat0_sample

__all__ = [
    "ArcDirection", "CatZeroReport", "ConePoint", "EuclideanCone",
    "EuclideanSpace", "FiniteMetricSpace", "GeodesicSegment", "MetricTree",
    "ProductSpace", "TreePoint", "TreeTangentCone", "alexandrov_angle",
    "comparison_angle", "distance", "dump_space", "geodesic", "graph_metric",
    "heawood_base", "load_space", "scale_cone_point", "space_from_json",
    "tree_tangent_cone", "tripod", "verify_cat0_sample",
]
