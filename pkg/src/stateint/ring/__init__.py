"""Exact symbolic ring D_b (x) D~_b, Laurent series in w and the residue P_{A,B}."""
from .laurent import LaurentSeriesW, TruncationError, series_exp, series_mul, series_pow
from .pab import (
    compute_PAB,
    degree_bounds_hold,
    one_minus_exp_inverse,
    pab_degrees,
    pab_symmetry_check,
    phi_delta_series,
    phitilde_delta_series,
)
from .polynomial import ONE, ZERO, OperatorPolynomial, UnknownGeneratorError

__all__ = [
    "LaurentSeriesW",
    "ONE",
    "OperatorPolynomial",
    "TruncationError",
    "UnknownGeneratorError",
    "ZERO",
    "compute_PAB",
    "degree_bounds_hold",
    "one_minus_exp_inverse",
    "pab_degrees",
    "pab_symmetry_check",
    "phi_delta_series",
    "phitilde_delta_series",
    "series_exp",
    "series_mul",
    "series_pow",
]
