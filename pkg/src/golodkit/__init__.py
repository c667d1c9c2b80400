"""Golod-type analysis of simplicial complexes and moment-angle complexes."""
from .complexes import ComplexError, SimplicialComplex, cycle, deletion, is_neighbourly, susp_triangle_with_edge, restriction
from .golod import GOLOD, NOT_GOLOD, classify_golod, extractible_necessary, golod_poincare_series
from .hochster import HochsterAlgebra, all_products_vanish, bigraded_betti
from .homology import reduced_homology
from .koszul import KoszulModel, cross_validate, triple_massey
from .linalg import Field

__version__ = "0.1.0"

__all__ = [
    "ComplexError", "SimplicialComplex", "cycle", "deletion", "is_neighbourly", "susp_triangle_with_edge",
    "restriction", "GOLOD", "NOT_GOLOD", "classify_golod", "extractible_necessary",
    "golod_poincare_series", "HochsterAlgebra", "all_products_vanish", "bigraded_betti",
    "reduced_homology", "KoszulModel", "cross_validate", "triple_massey", "Field", "__version__",
]
