"""G polynomials, the derivative identity and Lasota-Yorke constants."""

from .constants import LYReport, empirical_constants, ly_constants, symbolic_constants
from .identity import VariantSelection, crim_bracket, select_variant, verify_crim_identity
from .polynomials import (
    CORRECTED,
    PRINTED,
    VARIANTS,
    FormalPolynomial,
    evaluate,
    formal_derivative,
    g_polynomials,
    indeterminates,
    majorant,
    pretty,
)

__all__ = [
    "CORRECTED",
    "FormalPolynomial",
    "LYReport",
    "PRINTED",
    "VARIANTS",
    "VariantSelection",
    "crim_bracket",
    "empirical_constants",
    "evaluate",
    "formal_derivative",
    "g_polynomials",
    "indeterminates",
    "ly_constants",
    "majorant",
    "pretty",
    "select_variant",
    "symbolic_constants",
    "verify_crim_identity",
]
