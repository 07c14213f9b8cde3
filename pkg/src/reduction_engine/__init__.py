"""Ring homomorphisms from finitely presented domains onto Z/p."""

from .compose import CompositionResult, compose_all, compose_pair, rewrite_element
from .domain import (ConstraintSet, DomainPresentation, Element, ParseError, PresentationError, build_constraints,
                     format_element, load_problem, parse_element)
from .modpoly import ModPoly, decomposition_type, is_fully_split, powmod_x, roots_mod_p
from .reduce import (DensityReport, PrimeSearchConfig, ReductionMap, apply_map, density_scan, find_maps, run_pipeline,
                     verify_map)
from .specialize import SpecializationError, SpecializationResult, specialize
from .upoly import RatPoly, poly_gcd_q, resultant, squarefree_part

__version__ = "0.1.0"

__all__ = [
    "CompositionResult", "ConstraintSet", "DensityReport", "DomainPresentation", "Element", "ModPoly", "ParseError",
    "PresentationError", "PrimeSearchConfig", "RatPoly", "ReductionMap", "SpecializationError",
    "SpecializationResult", "apply_map", "build_constraints", "compose_all", "compose_pair", "decomposition_type",
    "density_scan", "find_maps", "format_element", "is_fully_split", "load_problem", "parse_element", "poly_gcd_q",
    "powmod_x", "resultant", "rewrite_element", "roots_mod_p", "run_pipeline", "specialize", "squarefree_part",
    "verify_map",
]
