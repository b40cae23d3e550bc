"""Exact Laplacian eigenvalue-2 toolkit for trees, unicyclic and bicyclic graphs."""

from .graph import Graph, build_graph, classify, one_edge_connect
from .exact import char_poly, integral_multiplicity, verify_eigenpair
from .matching import maximum_matching

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "build_graph",
    "classify",
    "one_edge_connect",
    "char_poly",
    "integral_multiplicity",
    "verify_eigenpair",
    "maximum_matching",
]
