"""Exact-arithmetic toric fans and the classification of Fano point blow-ups.

The package models smooth complete fans over arbitrary-precision integers,
computes walls (invariant curves) with their exact relations, decides
ampleness, Fano-ness, and Mori extremality, performs star-subdivision
blow-ups and codimension-two blow-downs, and mechanically verifies which
smooth toric Fano n-folds contain a projective-space divisor and which
smooth complete toric n-folds have a Fano blow-up at a fixed point.
"""

from .classify import (
    CatalogEntry,
    ClassificationResult,
    ClassificationViolation,
    DivisorAnalysis,
    FixedPointProbe,
    SimplificationStep,
    Theorem1Report,
    analyze_divisor,
    catalog,
    classify_fano_with_divisor,
    divisor_star_fan,
    find_transverse_extremal,
    p1_bundle_fan,
    projective_space_fan,
    random_corpus,
    simplify_pair,
    theorem1_check,
)
from .fan import (
    Fan,
    InvalidFanError,
    ValidationReport,
    Wall,
    contract_codim2,
    fans_isomorphic,
    is_complete,
    is_smooth,
    star_subdivide,
    validate,
    walls,
)
from .intersect import (
    DivisorPositivity,
    TDivisor,
    anticanonical_degree,
    anticanonical_divisor,
    divisor_dot_curve,
    is_ample,
    is_fano,
    is_nef,
    positivity,
    prime_divisor,
    principal_divisor,
)
from .mori import (
    ContractionInfo,
    CurveClass,
    contraction_info,
    curve_class,
    is_extremal,
    is_mori_extremal,
)

__version__ = "0.1.0"

__all__ = [
    "CatalogEntry",
    "ClassificationResult",
    "ClassificationViolation",
    "ContractionInfo",
    "CurveClass",
    "DivisorAnalysis",
    "DivisorPositivity",
    "Fan",
    "FixedPointProbe",
    "InvalidFanError",
    "SimplificationStep",
    "TDivisor",
    "Theorem1Report",
    "ValidationReport",
    "Wall",
    "analyze_divisor",
    "anticanonical_degree",
    "anticanonical_divisor",
    "catalog",
    "classify_fano_with_divisor",
    "contract_codim2",
    "contraction_info",
    "curve_class",
    "divisor_dot_curve",
    "divisor_star_fan",
    "fans_isomorphic",
    "find_transverse_extremal",
    "is_ample",
    "is_complete",
    "is_extremal",
    "is_fano",
    "is_mori_extremal",
    "is_nef",
    "is_smooth",
    "p1_bundle_fan",
    "positivity",
    "prime_divisor",
    "principal_divisor",
    "projective_space_fan",
    "random_corpus",
    "simplify_pair",
    "star_subdivide",
    "theorem1_check",
    "validate",
    "walls",
]
