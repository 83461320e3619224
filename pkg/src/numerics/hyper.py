"""
Hypergeometric Series Module

Scalar generalized hypergeometric series pFq (terminating, or truncated for
|x| < 1) and the matrix series ₂H₁: the power-series solution at x = 0 of

    x(1−x)·y″ + (C − xU)·y′ − V·y = 0

for a vector unknown y with y(0) = v0.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial import polynomial as npoly

from src.config.settings import app_config
from src.numerics.exceptions import HypergeometricError, SingularMatrixError, SizeMismatchError
from src.utils.helpers import as_square_matrix, is_numerically_singular

logger = logging.getLogger(__name__)


def _nonpositive_integer(value: float) -> Optional[int]:
    """Return m when value == −m for an integer m ≥ 0, else None."""
    rounded = round(value)
    if rounded <= 0 and abs(value - rounded) <= 1e-12 * max(1.0, abs(value)):
        return -int(rounded)
    return None


@dataclass(frozen=True)
class HyperSeriesParams:
    """Parameter lists of pFq plus the truncation rules for non-terminating sums."""

    numerator: Sequence[float]
    denominator: Sequence[float]
    truncation: int = field(default_factory=lambda: app_config.HYPER_MAX_TERMS)
    tolerance: float = field(default_factory=lambda: app_config.HYPER_TAIL_TOLERANCE)

    def __post_init__(self):
        object.__setattr__(self, 'numerator', tuple(float(a) for a in self.numerator))
        object.__setattr__(self, 'denominator', tuple(float(b) for b in self.denominator))
        if self.truncation < 1:
            raise ValueError("truncation must allow at least one term")
        last = self.degree if self.degree is not None else self.truncation - 1
        for b in self.denominator:
            pole = _nonpositive_integer(b)
            if pole is not None and pole < last:
                raise HypergeometricError(f"denominator parameter {b} hits a pole before the series ends")

    @property
    def degree(self) -> Optional[int]:
        """Polynomial degree of a terminating series, None otherwise."""
        orders = [m for m in map(_nonpositive_integer, self.numerator) if m is not None]
        return min(orders) if orders else None

    @property
    def terminating(self) -> bool:
        return self.degree is not None


def _term_ratio(params: HyperSeriesParams, k: int) -> float:
    """t_{k+1} / t_k without the power of x."""
    ratio = 1.0 / (k + 1)
    for a in params.numerator:
        ratio *= a + k
    for b in params.denominator:
        ratio /= b + k
    return ratio


def pfq_coefficients(params: HyperSeriesParams) -> Polynomial:
    """
    The terminating series as a polynomial in x.

    Raises:
        HypergeometricError: if no numerator parameter is a nonpositive integer
    """
    if not params.terminating:
        raise HypergeometricError("only terminating series have polynomial coefficients")
    coefficients = [1.0]
    for k in range(params.degree):
        coefficients.append(coefficients[-1] * _term_ratio(params, k))
    return Polynomial(coefficients)


def pfq(params: HyperSeriesParams, x: float) -> float:
    """
    Σ_k Π(a)_k / Π(b)_k · x^k / k!, summed in ascending order.

    Raises:
        HypergeometricError: for a non-terminating series with |x| ≥ 1
    """
    if params.terminating:
        last = params.degree
    elif abs(x) >= 1.0:
        raise HypergeometricError(f"non-terminating series needs |x| < 1, got x={x}")
    else:
        last = params.truncation - 1

    term, total = 1.0, 1.0
    for k in range(last):
        term *= _term_ratio(params, k) * x
        total += term
        if not params.terminating and abs(term) <= params.tolerance * abs(total):
            return total
    if not params.terminating:
        logger.warning("pFq at x=%s did not reach the tail tolerance in %d terms", x, params.truncation)
    return total


@dataclass
class MatrixSeries:
    """
    Coefficient vectors c_0, c_1, … of a ₂H₁ solution, shape (terms, N).

    `terminated` is True when a coefficient vanished (relative to the largest
    one), so the series is a polynomial of degree `degree`.
    """

    coefficients: np.ndarray
    terminated: bool

    @property
    def degree(self) -> int:
        return self.coefficients.shape[0] - 1

    def value(self, x: float) -> np.ndarray:
        return npoly.polyval(x, self.coefficients)

    def magnitude(self, x: float) -> float:
        """Σ ‖c_k‖·|x|^k, the scale of rounding errors in `value(x)`."""
        norms = np.linalg.norm(self.coefficients, axis=1)
        return float(np.sum(norms * np.abs(x) ** np.arange(norms.size)))


def _as_vector(v0, size: int) -> np.ndarray:
    vector = np.asarray(v0, dtype=complex).reshape(-1)
    if vector.size != size:
        raise SizeMismatchError(f"initial vector has {vector.size} entries, expected {size}")
    return vector


def matrix_2h1_coefficients(Ut, Vshift, Ct, v0, terms: Optional[int] = None) -> MatrixSeries:
    """
    Coefficients from (i+1)(C + iI)·c_{i+1} = (i(i−1)I + iU + V)·c_i.

    Stops early once a coefficient vanishes; further coefficients are then zero.

    Raises:
        SingularMatrixError: if some C + iI needed is singular; `index` names i
    """
    c = as_square_matrix(Ct)
    size = c.shape[0]
    u = as_square_matrix(Ut, size)
    v = as_square_matrix(Vshift, size)
    limit = app_config.HYPER_MAX_TERMS if terms is None else terms
    identity = np.eye(size, dtype=complex)

    coefficients: List[np.ndarray] = [_as_vector(v0, size)]
    largest = np.linalg.norm(coefficients[0])
    for i in range(limit - 1):
        shifted = c + i * identity
        if is_numerically_singular(shifted):
            raise SingularMatrixError(f"C + {i}·I is singular", index=i)
        following = np.linalg.solve(shifted, (i * (i - 1) * identity + i * u + v) @ coefficients[i]) / (i + 1)
        norm = np.linalg.norm(following)
        if norm <= app_config.HYPER_TERMINATION_RATIO * largest:
            return MatrixSeries(np.array(coefficients), True)
        largest = max(largest, norm)
        coefficients.append(following)
    return MatrixSeries(np.array(coefficients), False)


def matrix_2H1(Ut, Vshift, Ct, x: float, v0, terms: Optional[int] = None) -> np.ndarray:
    """
    Value at x of the ₂H₁ solution with y(0) = v0.

    Raises:
        HypergeometricError: for a non-terminating series with |x| > 1
    """
    series = matrix_2h1_coefficients(Ut, Vshift, Ct, v0, terms)
    if not series.terminated:
        if abs(x) > 1.0:
            raise HypergeometricError(f"non-terminating matrix series needs |x| ≤ 1, got x={x}")
        total = series.value(x)
        tail = np.linalg.norm(series.coefficients[-1]) * abs(x) ** series.degree
        if tail > app_config.HYPER_TAIL_TOLERANCE * max(np.linalg.norm(total), 1.0):
            logger.warning("matrix 2H1 at x=%s truncated with tail %.3e", x, tail)
        return total
    return series.value(x)


def ode_residual(Ut, Vshift, Ct, series: MatrixSeries, x: float) -> float:
    """
    Backward error of the series in x(1−x)y″ + (C − xU)y′ − Vy = 0 at x.

    Power by power the equation reads (k+1)(C + kI)c_{k+1} = (k(k−1)I + kU + V)c_k.
    The residual Σ x^k·(left − right) is divided by Σ |x|^k·(‖left‖ + ‖right‖),
    so a truncated tail shows up and rounding in large coefficients does not.
    """
    c = as_square_matrix(Ct)
    size = c.shape[0]
    u = as_square_matrix(Ut, size)
    v = as_square_matrix(Vshift, size)
    identity = np.eye(size, dtype=complex)
    coefficients = np.vstack([series.coefficients, np.zeros((1, size), dtype=complex)])

    residual = np.zeros(size, dtype=complex)
    scale = 0.0
    for k in range(series.degree + 1):
        left = (k + 1) * (c + k * identity) @ coefficients[k + 1]
        right = (k * (k - 1) * identity + k * u + v) @ coefficients[k]
        power = x ** k
        residual += power * (left - right)
        scale += abs(power) * (np.linalg.norm(left) + np.linalg.norm(right))
    norm = float(np.linalg.norm(residual))
    return norm / scale if scale > 0.0 else norm
