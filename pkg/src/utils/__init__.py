"""
Utilities Package

Helper functions used throughout the package: logging setup, matrix checks,
residuals, sample generation and error messages.
"""

from .helpers import (
    configure_logging,
    as_square_matrix,
    singular_value_ratio,
    is_numerically_singular,
    relative_residual,
    hermitian_defect,
    sample_points,
    check_same_size,
    format_error_message,
)

__all__ = [
    "configure_logging",
    "as_square_matrix",
    "singular_value_ratio",
    "is_numerically_singular",
    "relative_residual",
    "hermitian_defect",
    "sample_points",
    "check_same_size",
    "format_error_message",
]
