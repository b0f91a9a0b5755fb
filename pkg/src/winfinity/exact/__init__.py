"""Exact scalars, polynomials, truncated EGF series and quasipolynomials."""

from .linalg import determinant, is_hermitian, is_psd, leading_minors, nullspace, rank, rref, solve
from .poly import ONE, W, ZERO, Poly, falling_factorial, falling_poly, poly, poly_shift
from .quasipoly import (
    QuasiPoly,
    apply_diffop,
    min_annihilator,
    quasipoly_to_series,
    series_div_expm1,
    solve_falling_diffop,
)
from .recurrence import InsufficientDataError, RecurrenceCertificate, detect_recurrence
from .scalar import (
    I,
    GaussianRational,
    Scalar,
    as_scalar,
    conj,
    div,
    format_scalar,
    gaussian,
    is_integer,
    is_real,
    parse_scalar,
)
from .series import TruncSeries

__all__ = [
    "I", "ONE", "W", "ZERO",
    "GaussianRational", "InsufficientDataError", "Poly", "QuasiPoly",
    "RecurrenceCertificate", "Scalar", "TruncSeries",
    "apply_diffop", "as_scalar", "conj", "detect_recurrence", "determinant", "div",
    "falling_factorial", "falling_poly", "format_scalar", "gaussian", "is_hermitian",
    "is_integer", "is_psd", "is_real", "leading_minors", "min_annihilator", "nullspace",
    "parse_scalar", "poly", "poly_shift", "quasipoly_to_series", "rank", "rref",
    "series_div_expm1", "solve", "solve_falling_diffop",
]
