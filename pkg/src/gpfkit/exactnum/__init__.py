"""Exact arithmetic: rationals, real quadratic fields, polynomials, rational
functions, and real-root isolation."""

from fractions import Fraction

from .mpoly import MPoly, bivariate_gcd, bivariate_resultant, mpoly_exquo
from .poly import (
    Poly,
    pochhammer,
    poly_gcd,
    poly_lcm,
    resultant,
    squarefree_decomposition,
    squarefree_part,
)
from .quadext import (
    FieldMismatchError,
    QuadExt,
    conj,
    field_pow,
    field_sign,
    field_sqrt,
    format_field,
    format_rational,
    is_rational,
    quad,
    radicand_of,
    rational_sqrt,
    sqrt_int,
    to_field,
    to_mpf,
)
from .ratfunc import RatFunc
from .roots import (
    DegreeOverflowError,
    FieldRoots,
    SmallFactorization,
    cauchy_bound,
    factor_small,
    isolate_real_roots,
    rational_roots,
    roots_in_field,
)

Rational = Fraction

__all__ = [
    "Rational", "QuadExt", "FieldMismatchError", "Poly", "RatFunc", "MPoly",
    "poly_gcd", "poly_lcm", "resultant", "squarefree_decomposition", "squarefree_part",
    "pochhammer", "bivariate_gcd", "bivariate_resultant", "mpoly_exquo",
    "conj", "field_pow", "field_sign", "field_sqrt", "format_field", "format_rational",
    "is_rational", "quad", "radicand_of", "rational_sqrt", "sqrt_int", "to_field", "to_mpf",
    "DegreeOverflowError", "FieldRoots", "SmallFactorization", "cauchy_bound",
    "factor_small", "isolate_real_roots", "rational_roots", "roots_in_field",
]
