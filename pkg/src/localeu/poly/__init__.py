"""Exact polynomial and ideal arithmetic over the rationals."""

from .groebner import DEFAULT_BUDGET, current_budget, step_budget
from .ideal import (
    Ideal,
    dimension_and_degree,
    generic_linear_form,
    hilbert_numerator,
    intersect,
    is_groebner,
    is_reduced,
    is_squarefree,
    normal_form,
    polynomial_gcd,
    quotient,
    reduced_groebner,
    saturate,
    saturate_by,
    zero_dim_length,
)
from .polynomial import QQ, Polynomial, divide_exact
from .ring import GREVLEX, LEX, MonomialOrder, Ring

__all__ = [
    "DEFAULT_BUDGET", "GREVLEX", "LEX", "QQ", "Ideal", "MonomialOrder", "Polynomial",
    "Ring", "current_budget", "dimension_and_degree", "divide_exact",
    "generic_linear_form", "hilbert_numerator", "intersect", "is_groebner",
    "is_reduced", "is_squarefree", "normal_form", "polynomial_gcd", "quotient",
    "reduced_groebner", "saturate", "saturate_by", "step_budget", "zero_dim_length",
]
