"""
Matrix Polynomial Module

Polynomials in one real variable whose coefficients are N×N complex matrices,
stored densely in ascending degree. Values are immutable: every operation
returns a new, trimmed polynomial.
"""

import math
from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np
from numpy.polynomial import Polynomial

from src.config.settings import app_config
from src.numerics.exceptions import SizeMismatchError
from src.utils.helpers import as_square_matrix, is_numerically_singular

ScalarPolynomial = Union[Polynomial, Sequence[complex]]


class LeadingCoefficient(NamedTuple):
    degree: int
    matrix: np.ndarray
    nonsingular: bool


def _trim(coeffs: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(coeffs, axis=(1, 2))
    largest = norms.max()
    if largest == 0.0:
        return np.zeros((1,) + coeffs.shape[1:], dtype=complex)
    keep = np.nonzero(norms > app_config.TRIM_TOLERANCE * largest)[0]
    return coeffs[: keep[-1] + 1]


class MatrixPolynomial:
    """
    Square-matrix-coefficient polynomial Σ coeffs[k]·x^k.

    The stored leading coefficient always has norm above the trim tolerance
    (relative to the largest coefficient) unless the polynomial is zero, in
    which case a single zero coefficient is kept.
    """

    __slots__ = ('_coeffs',)

    # ndarray @ MatrixPolynomial dispatches to __rmatmul__
    __array_ufunc__ = None

    def __init__(self, coeffs: Union[np.ndarray, Iterable]):
        array = np.array(coeffs, dtype=complex)
        if array.ndim == 2:
            array = array[np.newaxis]
        if array.ndim != 3 or array.shape[0] == 0 or array.shape[1] != array.shape[2]:
            raise SizeMismatchError(
                f"coefficients must be a non-empty stack of square matrices, got shape {array.shape}"
            )
        if not np.all(np.isfinite(array)):
            raise ValueError("coefficients must be finite")
        array = _trim(array)
        array.setflags(write=False)
        self._coeffs = array

    @classmethod
    def constant(cls, matrix) -> 'MatrixPolynomial':
        return cls(as_square_matrix(matrix)[np.newaxis])

    @classmethod
    def identity(cls, size: int) -> 'MatrixPolynomial':
        return cls(np.eye(size, dtype=complex)[np.newaxis])

    @classmethod
    def zero(cls, size: int) -> 'MatrixPolynomial':
        return cls(np.zeros((1, size, size), dtype=complex))

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence[ScalarPolynomial]]) -> 'MatrixPolynomial':
        """Assemble a matrix polynomial from a square grid of scalar polynomials."""
        grid = [[_scalar_coefficients(entry) for entry in row] for row in entries]
        size = len(grid)
        if any(len(row) != size for row in grid):
            raise SizeMismatchError("entry grid must be square")
        length = max(len(entry) for row in grid for entry in row)
        coeffs = np.zeros((length, size, size), dtype=complex)
        for i, row in enumerate(grid):
            for j, entry in enumerate(row):
                coeffs[: len(entry), i, j] = entry
        return cls(coeffs)

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def size(self) -> int:
        return self._coeffs.shape[1]

    @property
    def degree(self) -> int:
        return self._coeffs.shape[0] - 1

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and not np.any(self._coeffs[0])

    def __call__(self, x):
        return poly_eval(self, x)

    def __add__(self, other: 'MatrixPolynomial') -> 'MatrixPolynomial':
        return poly_add(self, other)

    def __sub__(self, other: 'MatrixPolynomial') -> 'MatrixPolynomial':
        return poly_sub(self, other)

    def __neg__(self) -> 'MatrixPolynomial':
        return poly_scale(-1.0, self)

    def __mul__(self, scalar: complex) -> 'MatrixPolynomial':
        return poly_scale(scalar, self)

    __rmul__ = __mul__

    def __matmul__(self, other) -> 'MatrixPolynomial':
        if isinstance(other, MatrixPolynomial):
            return poly_mul(self, other)
        return poly_right_mul(self, other)

    def __rmatmul__(self, other) -> 'MatrixPolynomial':
        return poly_left_mul(other, self)

    def derivative(self, order: int = 1) -> 'MatrixPolynomial':
        return poly_derivative(self, order)

    def compose_affine(self, sigma: float, tau: float) -> 'MatrixPolynomial':
        return poly_compose_affine(self, sigma, tau)

    def adjoint(self) -> 'MatrixPolynomial':
        return poly_adjoint(self)

    def leading_coefficient(self) -> LeadingCoefficient:
        return leading_coefficient(self)

    def __repr__(self) -> str:
        return f"MatrixPolynomial(size={self.size}, degree={self.degree})"


def _scalar_coefficients(s: ScalarPolynomial) -> np.ndarray:
    if isinstance(s, Polynomial):
        return np.asarray(s.coef, dtype=complex)
    return np.atleast_1d(np.asarray(s, dtype=complex))


def _require_same_size(p: MatrixPolynomial, q: MatrixPolynomial) -> None:
    if p.size != q.size:
        raise SizeMismatchError(f"sizes differ: {p.size} vs {q.size}")


def poly_eval(p: MatrixPolynomial, x):
    """
    Horner evaluation.

    A scalar x gives an N×N matrix; an array of points gives an (m, N, N) stack.
    """
    coeffs = p.coeffs
    points = np.asarray(x, dtype=float)
    if points.ndim == 0:
        result = coeffs[-1].copy()
        for c in coeffs[-2::-1]:
            result = result * float(points) + c
        return result
    grid = points.reshape(-1, 1, 1)
    result = np.broadcast_to(coeffs[-1], (grid.shape[0],) + coeffs.shape[1:]).copy()
    for c in coeffs[-2::-1]:
        result = result * grid + c
    return result.reshape(points.shape + coeffs.shape[1:])


def poly_add(p: MatrixPolynomial, q: MatrixPolynomial) -> MatrixPolynomial:
    _require_same_size(p, q)
    length = max(p.degree, q.degree) + 1
    coeffs = np.zeros((length, p.size, p.size), dtype=complex)
    coeffs[: p.degree + 1] += p.coeffs
    coeffs[: q.degree + 1] += q.coeffs
    return MatrixPolynomial(coeffs)


def poly_sub(p: MatrixPolynomial, q: MatrixPolynomial) -> MatrixPolynomial:
    return poly_add(p, poly_scale(-1.0, q))


def poly_scale(c: complex, p: MatrixPolynomial) -> MatrixPolynomial:
    return MatrixPolynomial(complex(c) * p.coeffs)


def poly_left_mul(m, p: MatrixPolynomial) -> MatrixPolynomial:
    """Return M·P."""
    matrix = as_square_matrix(m, p.size)
    return MatrixPolynomial(np.matmul(matrix, p.coeffs))


def poly_right_mul(p: MatrixPolynomial, m) -> MatrixPolynomial:
    """Return P·M."""
    matrix = as_square_matrix(m, p.size)
    return MatrixPolynomial(np.matmul(p.coeffs, matrix))


def poly_mul(p: MatrixPolynomial, q: MatrixPolynomial) -> MatrixPolynomial:
    """Matrix product P(x)·Q(x) (order matters)."""
    _require_same_size(p, q)
    coeffs = np.zeros((p.degree + q.degree + 1, p.size, p.size), dtype=complex)
    for i, c in enumerate(p.coeffs):
        coeffs[i: i + q.degree + 1] += np.matmul(c, q.coeffs)
    return MatrixPolynomial(coeffs)


def poly_mul_scalar_poly(p: MatrixPolynomial, s: ScalarPolynomial) -> MatrixPolynomial:
    """Return s(x)·P(x) for a scalar polynomial s."""
    scalar = _scalar_coefficients(s)
    coeffs = np.zeros((p.degree + len(scalar), p.size, p.size), dtype=complex)
    for j, a in enumerate(scalar):
        coeffs[j: j + p.degree + 1] += a * p.coeffs
    return MatrixPolynomial(coeffs)


def poly_derivative(p: MatrixPolynomial, order: int = 1) -> MatrixPolynomial:
    if order < 0:
        raise ValueError("derivative order must be nonnegative")
    if order == 0:
        return p
    if order > p.degree:
        return MatrixPolynomial.zero(p.size)
    factors = np.array([math.perm(j, order) for j in range(order, p.degree + 1)], dtype=float)
    return MatrixPolynomial(factors[:, np.newaxis, np.newaxis] * p.coeffs[order:])


def poly_compose_affine(p: MatrixPolynomial, sigma: float, tau: float) -> MatrixPolynomial:
    """Return P(σx+τ) by binomial re-expansion of the powers of σx+τ."""
    degree = p.degree
    transform = np.zeros((degree + 1, degree + 1))
    for k in range(degree + 1):
        for j in range(k + 1):
            transform[j, k] = math.comb(k, j) * sigma ** j * tau ** (k - j)
    return MatrixPolynomial(np.einsum('jk,kab->jab', transform, p.coeffs))


def poly_adjoint(p: MatrixPolynomial) -> MatrixPolynomial:
    """Coefficient-wise conjugate transpose, so that P*(x) = P(x)* for real x."""
    return MatrixPolynomial(np.conj(np.transpose(p.coeffs, (0, 2, 1))))


def leading_coefficient(p: MatrixPolynomial) -> LeadingCoefficient:
    """
    Degree, leading coefficient and its nonsingularity.

    Raises:
        ValueError: for the zero polynomial
    """
    if p.is_zero:
        raise ValueError("the zero polynomial has no leading coefficient")
    matrix = p.coeffs[-1].copy()
    return LeadingCoefficient(p.degree, matrix, not is_numerically_singular(matrix))
