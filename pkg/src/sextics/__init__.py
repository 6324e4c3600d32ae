"""Exact computation with maximizing plane sextic curves.

The library builds plane sextics from pencils of cubics through an explicit
birational involution of the plane, classifies their singularities exactly,
re-derives the defining parameter values by resultant elimination, and
computes the lattice and field-of-definition invariants that separate
Galois-conjugate curves.
"""

from .numfield import (QQ, Embedding, FieldElement, NumberField, Rational,
                       enumerate_embeddings, extend_field, field_arithmetic,
                       fields_isomorphic, format_element, numeric_evaluate,
                       parse_element, rational)
from .poly import (MultiPoly, discriminant, exact_divide, factor_over_field,
                   factor_rational, gcd_multivariate, poly_from_string,
                   primed_symmetrize, resultant, squarefree_decompose,
                   sylvester_resultant)

__all__ = [
    "QQ", "Embedding", "FieldElement", "NumberField", "Rational",
    "enumerate_embeddings", "extend_field", "field_arithmetic",
    "fields_isomorphic", "format_element", "numeric_evaluate",
    "parse_element", "rational",
    "MultiPoly", "discriminant", "exact_divide", "factor_over_field",
    "factor_rational", "gcd_multivariate", "poly_from_string",
    "primed_symmetrize", "resultant", "squarefree_decompose",
    "sylvester_resultant",
]
