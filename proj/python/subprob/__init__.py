"""Exact subset probabilities, property lattices and morphisms.

Rational values are passed and returned as strings such as "3/5";
``fractions.Fraction`` parses them directly.
"""

from ._core import (
    IntervalSet,
    Morphism,
    MorphismError,
    ParseError,
    PropertySystem,
    RecoveryReport,
    SepSystem,
    SimulationError,
    Term,
    UnknownSymbolError,
    check_morphism,
    compose,
    derive_sp,
    enumerate_terms,
    holds_within,
    identity_morphism,
    is_certain,
    is_close_to_certain,
    is_performable,
    load_morphism,
    load_sep,
    mu_eval,
    parse_morphism,
    parse_sep,
    product,
    prop1_diagnostic,
    recover_subset,
)

__all__ = [
    "IntervalSet",
    "Morphism",
    "MorphismError",
    "ParseError",
    "PropertySystem",
    "RecoveryReport",
    "SepSystem",
    "SimulationError",
    "Term",
    "UnknownSymbolError",
    "check_morphism",
    "compose",
    "derive_sp",
    "enumerate_terms",
    "holds_within",
    "identity_morphism",
    "is_certain",
    "is_close_to_certain",
    "is_performable",
    "load_morphism",
    "load_sep",
    "mu_eval",
    "parse_morphism",
    "parse_sep",
    "product",
    "prop1_diagnostic",
    "recover_subset",
]
