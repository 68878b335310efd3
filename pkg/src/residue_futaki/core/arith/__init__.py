"""Exact arithmetic kernel: polynomials, rational functions, matrices."""

from .poly import Poly, Monomial, format_rational, monomial_key
from .ratfunc import RatFunc, normalize_factor, exact_value
from .matrix import PolyMatrix, solve_linear_system

__all__ = [
    'Poly',
    'Monomial',
    'format_rational',
    'monomial_key',
    'RatFunc',
    'normalize_factor',
    'exact_value',
    'PolyMatrix',
    'solve_linear_system',
]
