"""Almost distance-regularity of regular graphs."""

from .classify import ClassificationReport, GraphAnalysis, classify, lattice_violations
from .config import DEFAULT_TOLERANCES, Tolerances
from .graph import Graph, ValidatedGraph, distance_structure, encode_graph6, parse_graph6, validate
from .predistance import build_predistance, inner_product
from .spectral import eigendecompose, multiplicity_table, walk_table

__all__ = [
    "ClassificationReport", "GraphAnalysis", "classify", "lattice_violations",
    "DEFAULT_TOLERANCES", "Tolerances",
    "Graph", "ValidatedGraph", "distance_structure", "encode_graph6", "parse_graph6", "validate",
    "build_predistance", "inner_product",
    "eigendecompose", "multiplicity_table", "walk_table",
]
