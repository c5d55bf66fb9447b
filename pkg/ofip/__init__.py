"""
Ordered-interval fuzzy inner products.

Ordered-interval arithmetic, fuzzy numbers, classical inner-product spaces,
fuzzy inner-product and fuzzy-norm triples, and a randomized verifier for the
inequalities they satisfy.
"""

from ofip.ordered_interval import CanonicalInterval, OrderedInterval, OrderedIntervalError
from ofip.fuzzy_number import AlphaCut, AlphaLevelError, FuzzyNumber, MembershipError
from ofip.classical_space import ClassicalInnerProduct, ClassicalNorm, OrthonormalSystem, gram_schmidt
from ofip.fuzzy_structures import (
    AlphaProfile,
    FuzzyInnerProductTriple,
    FuzzyNormTriple,
    MixingFunction,
    derive_norm_triple,
    make_general_fip,
    make_scaled_fip,
)
from ofip.verifier import CHECK_IDS, CheckRecord

__version__ = "0.1.0"

__all__ = [
    "AlphaCut",
    "AlphaLevelError",
    "AlphaProfile",
    "CHECK_IDS",
    "CanonicalInterval",
    "CheckRecord",
    "ClassicalInnerProduct",
    "ClassicalNorm",
    "FuzzyInnerProductTriple",
    "FuzzyNormTriple",
    "FuzzyNumber",
    "MembershipError",
    "MixingFunction",
    "OrderedInterval",
    "OrderedIntervalError",
    "OrthonormalSystem",
    "derive_norm_triple",
    "gram_schmidt",
    "make_general_fip",
    "make_scaled_fip",
]
