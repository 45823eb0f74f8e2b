"""Exact rational scalars, sparse polynomials, linear forms and linear algebra."""
from fractions import Fraction

from .linalg import (
    Echelon,
    RationalMatrix,
    det,
    kernel,
    poly_det,
    rank,
    row_space_basis,
    solve_membership,
)
from .linear import LinearForm, LinearPowerReducer, remainder_mod_linear_power
from .polynomial import (
    NotDivisible,
    Polynomial,
    as_rational,
    divide_exact,
    monomials,
    poly_arith,
    product,
    rational_str,
    try_divide,
    variable_names,
)

Rational = Fraction

__all__ = [
    "Echelon",
    "Fraction",
    "LinearForm",
    "LinearPowerReducer",
    "NotDivisible",
    "Polynomial",
    "Rational",
    "RationalMatrix",
    "as_rational",
    "det",
    "divide_exact",
    "kernel",
    "monomials",
    "poly_arith",
    "poly_det",
    "product",
    "rank",
    "rational_str",
    "remainder_mod_linear_power",
    "row_space_basis",
    "solve_membership",
    "try_divide",
    "variable_names",
]
