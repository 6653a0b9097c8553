"""Univariate complex Hermite polynomials and the Mehler-type kernels built on them."""
from ._backend import BACKEND
from .errors import ConvergenceError, DomainError
from .hermite_core import (EvalPoint, chp_eval, chp_eval_array, chp_poly, chp_rodrigues,
                           chp_scaled_table, chp_table, chp_zero_value, diagonal_laguerre_check,
                           laguerre_eval, magnetic_laplacian_apply, real_hermite_eval)
from .kernels import HeatArgs, KernelArgs, TruncationSpec
from .quadrature import IntegralRepParams, QuadratureRule
from .report import IdentityReport
from .tripoly import TriPoly

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "ConvergenceError", "DomainError", "EvalPoint", "HeatArgs", "IdentityReport",
    "IntegralRepParams", "KernelArgs", "QuadratureRule", "TriPoly", "TruncationSpec",
    "chp_eval", "chp_eval_array", "chp_poly", "chp_rodrigues", "chp_scaled_table", "chp_table",
    "chp_zero_value", "diagonal_laguerre_check", "laguerre_eval", "magnetic_laplacian_apply",
    "real_hermite_eval",
]
