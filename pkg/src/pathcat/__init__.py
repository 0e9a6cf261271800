"""Finite, exhaustively checked models of path 2-categories, colax
path-objects over bicategories, bridges and localizations.

Everything here works on explicit finite data and truncates chains at a
maximal length ``N``; every claim a function verifies holds up to that
truncation.
"""

from . import bicat, bridge, enrichment, errors, fincat, localize, pathcat, simplex
from .bicat import BaseOfEnrichment, FinBicategory, MonoidalCategory, canonical_bases, validate_bicategory, validate_colax
from .enrichment import (
    EnrichedCategory,
    PathObject,
    QuantaleBase,
    check_path_object,
    cocycle_check,
    enriched_to_path,
    metric_enrichment,
    strict_to_enriched,
)
from .fincat import FinCategory, FinFunctor, coarse, interval, terminal, validate_category, validate_functor
from .pathcat import Chain, Path2Category, build_path_category, delta_identification

__version__ = "0.1.0"

__all__ = [
    "BaseOfEnrichment",
    "Chain",
    "EnrichedCategory",
    "FinBicategory",
    "FinCategory",
    "FinFunctor",
    "MonoidalCategory",
    "Path2Category",
    "PathObject",
    "QuantaleBase",
    "bicat",
    "bridge",
    "build_path_category",
    "canonical_bases",
    "check_path_object",
    "coarse",
    "cocycle_check",
    "delta_identification",
    "enriched_to_path",
    "enrichment",
    "errors",
    "fincat",
    "interval",
    "localize",
    "metric_enrichment",
    "pathcat",
    "simplex",
    "strict_to_enriched",
    "terminal",
    "validate_bicategory",
    "validate_category",
    "validate_colax",
    "validate_functor",
]
