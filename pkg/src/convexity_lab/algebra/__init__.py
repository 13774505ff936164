"""Exact polynomial algebra and the derivative degeneracy test."""

from .degeneracy import DegeneracyReport, Verdict, compute_test_function, degeneracy_test, xn_family_check
from .elimination import bareiss_determinant, eliminate_two, resultant, sylvester_matrix, verify_parametrization
from .polynomial import (
    NEG_INF,
    ONE,
    ZERO,
    Polynomial,
    as_polynomial,
    as_rational,
    divide_exact,
    poly_arith,
    poly_eval,
    variables,
)
from .ratfunc import RationalFunction, partial_derivative, rf_equal, substitute

__all__ = [
    "DegeneracyReport", "Verdict", "compute_test_function", "degeneracy_test", "xn_family_check",
    "bareiss_determinant", "eliminate_two", "resultant", "sylvester_matrix", "verify_parametrization",
    "NEG_INF", "ONE", "ZERO", "Polynomial", "as_polynomial", "as_rational", "divide_exact",
    "poly_arith", "poly_eval", "variables", "RationalFunction", "partial_derivative", "rf_equal",
    "substitute",
]
