"""Darboux polynomials of the three-dimensional Lotka-Volterra system."""

from .lv import KM, PERIODIC_KM, LVParams, cofactor_of, lie_derivative, lv_vector_field, poisson_bracket
from .poly import LinForm, NotDivisible, Poly, parse_poly
from .search import SearchResult, cofactor_lattice, darboux_nullspace, search, search_all
from .structure import CannotCertify, Certificate, casimir_exponents, certify, classify_params

__version__ = "0.1.0"

__all__ = [
    "KM",
    "PERIODIC_KM",
    "CannotCertify",
    "Certificate",
    "LVParams",
    "LinForm",
    "NotDivisible",
    "Poly",
    "SearchResult",
    "casimir_exponents",
    "certify",
    "classify_params",
    "cofactor_lattice",
    "cofactor_of",
    "darboux_nullspace",
    "lie_derivative",
    "lv_vector_field",
    "parse_poly",
    "poisson_bracket",
    "search",
    "search_all",
]
