"""
Utility Helper Functions

This module contains small, reusable functions shared by the numerics, the
verification service and the command line: logging setup, matrix checks,
residual arithmetic, sample generation and user-facing error messages.
"""

import logging
import sys
from typing import Optional, Sequence, Tuple

import numpy as np

from src.config.settings import app_config
from src.numerics.exceptions import SizeMismatchError


def configure_logging(level: Optional[str] = None) -> None:
    """
    Install a single stderr handler for the package loggers.

    stdout carries only command payloads, so diagnostics must never go there.

    Args:
        level: Logging level name; falls back to MOPKIT_LOG, then WARNING
    """
    level_name = (level or app_config.LOG_LEVEL or 'WARNING').upper()
    numeric_level = getattr(logging, level_name, logging.WARNING)

    logging.basicConfig(
        level=numeric_level,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
        force=True,
    )


def as_square_matrix(value, size: Optional[int] = None) -> np.ndarray:
    """
    Convert a value to a finite complex N×N array.

    Args:
        value: Anything numpy can turn into a 2-D array
        size: Expected N, or None to accept any square shape

    Returns:
        A complex128 array

    Raises:
        SizeMismatchError: if the array is not square or not of the expected size
        ValueError: if it contains NaN or Inf
    """
    matrix = np.asarray(value, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise SizeMismatchError(f"expected a square matrix, got shape {matrix.shape}")
    if size is not None and matrix.shape[0] != size:
        raise SizeMismatchError(f"expected a {size}x{size} matrix, got {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("matrix entries must be finite")
    return matrix


def singular_value_ratio(matrix: np.ndarray) -> float:
    """Return sigma_min / sigma_max (0 for the zero matrix)."""
    singular_values = np.linalg.svd(np.asarray(matrix, dtype=complex), compute_uv=False)
    if singular_values[0] == 0.0:
        return 0.0
    return float(singular_values[-1] / singular_values[0])


def is_numerically_singular(matrix: np.ndarray, ratio: Optional[float] = None) -> bool:
    """
    Decide singularity by the smallest-to-largest singular value ratio.

    Args:
        matrix: Square matrix
        ratio: Threshold (defaults to SINGULARITY_RATIO)
    """
    threshold = app_config.SINGULARITY_RATIO if ratio is None else ratio
    return singular_value_ratio(matrix) < threshold


def relative_residual(actual: np.ndarray, expected: np.ndarray, scale: Optional[float] = None) -> float:
    """
    Frobenius-norm residual of `actual - expected` relative to a scale.

    The scale defaults to the norm of `expected`; when that scale is zero the
    absolute residual is returned.
    """
    difference = np.linalg.norm(np.asarray(actual) - np.asarray(expected))
    reference = np.linalg.norm(expected) if scale is None else scale
    if reference == 0.0:
        return float(difference)
    return float(difference / reference)


def hermitian_defect(matrix: np.ndarray) -> float:
    """Return ‖M − M*‖ / ‖M‖ (absolute for the zero matrix)."""
    return relative_residual(matrix, np.conj(matrix).T, scale=np.linalg.norm(matrix))


def sample_points(
    count: int,
    interval: Tuple[float, float],
    seed: Optional[int] = None,
    window: Optional[Tuple[float, float]] = None,
) -> np.ndarray:
    """
    Draw sorted random interior points of an interval.

    Args:
        count: Number of points
        interval: (a, b)
        seed: Generator seed (defaults to SAMPLE_SEED)
        window: Optional fractional sub-window, e.g. (0.05, 0.95)

    Returns:
        Sorted array of distinct points strictly inside (a, b)
    """
    a, b = interval
    lo, hi = window if window is not None else (0.02, 0.98)
    rng = np.random.default_rng(app_config.SAMPLE_SEED if seed is None else seed)
    fractions = np.sort(rng.uniform(lo, hi, size=count))
    return a + (b - a) * fractions


def check_same_size(sizes: Sequence[int]) -> int:
    """Return the common size of a sequence of sizes or raise SizeMismatchError."""
    distinct = set(sizes)
    if len(distinct) != 1:
        raise SizeMismatchError(f"mismatched sizes: {sorted(distinct)}")
    return distinct.pop()


def format_error_message(error_type: str, details: str = "") -> str:
    """
    Create human-readable diagnostics for stderr.

    Args:
        error_type: Type of error that occurred
        details: Additional error details

    Returns:
        Message for the user
    """
    error_messages = {
        'unknown_model': "Unknown model. Registered models: " + ", ".join(app_config.AVAILABLE_MODELS) + ".",
        'bad_parameters': "Invalid parameters for this command.",
        'unknown_check': "Unknown check. Available checks: " + ", ".join(app_config.AVAILABLE_CHECKS) + ".",
        'singular_matrix': "A matrix that must be invertible is numerically singular.",
        'degenerate_weight': "The weight is degenerate or the quadrature rule is too coarse.",
        'not_polynomial': "The conjugated operator is not hypergeometric on the sampled points.",
        'output_error': "Could not write the output file.",
        'unknown': "An unexpected error occurred.",
    }

    base_message = error_messages.get(error_type, error_messages['unknown'])

    if details:
        return f"{base_message}\nDetails: {details}"

    return base_message
