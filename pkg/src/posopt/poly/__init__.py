"""Commutative polynomial substrate: monomials, polynomials, parsing."""

from .monomial import Monomial, graded_lex_monomials
from .parser import infer_num_vars, parse_poly
from .polynomial import (
    Poly,
    coefficient_residual,
    derive,
    eval_poly,
    gradient,
    is_close,
    poly_sum,
    sum_of_squares_poly,
)

__all__ = [
    'Monomial',
    'Poly',
    'coefficient_residual',
    'derive',
    'eval_poly',
    'gradient',
    'graded_lex_monomials',
    'infer_num_vars',
    'is_close',
    'parse_poly',
    'poly_sum',
    'sum_of_squares_poly',
]
