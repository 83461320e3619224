"""
Weights Module

Matrix weights on an interval: moments, positive-semidefiniteness reports,
conjugation W ↦ F0·W·F0* and constant equivalence W ↦ M·W·M*.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from src.config.settings import app_config
from src.numerics.exceptions import SingularMatrixError
from src.numerics.quadrature import QuadratureRule, integrate_matrix
from src.utils.helpers import as_square_matrix, hermitian_defect, is_numerically_singular

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MatrixWeight:
    """
    Evaluable Hermitian positive-semidefinite density on (a, b).

    `polynomial_degree` is set when every entry is a polynomial of at most
    that degree, so that exact Gauss–Legendre rules can be chosen.
    """

    size: int
    support: Tuple[float, float]
    evaluate: Callable[[float], np.ndarray] = field(repr=False)
    polynomial_degree: Optional[int] = None
    name: str = 'weight'

    def __call__(self, x: float) -> np.ndarray:
        return as_square_matrix(self.evaluate(x), self.size)

    def is_hermitian(self, xs: Sequence[float], tol: float = 1e-12) -> bool:
        return all(hermitian_defect(self(x)) <= tol for x in xs)


def constant_weight(matrix, support: Tuple[float, float], name: str = 'constant') -> MatrixWeight:
    value = as_square_matrix(matrix)
    return MatrixWeight(value.shape[0], support, lambda x: value, 0, name)


def diagonal_weight(
    entries: Sequence[Callable[[float], float]],
    support: Tuple[float, float],
    polynomial_degree: Optional[int] = None,
    name: str = 'diagonal',
) -> MatrixWeight:
    def evaluate(x: float) -> np.ndarray:
        return np.diag([entry(x) for entry in entries]).astype(complex)

    return MatrixWeight(len(entries), support, evaluate, polynomial_degree, name)


def moment(weight: MatrixWeight, order: int, rule: QuadratureRule) -> np.ndarray:
    """∫ x^k W(x) dx."""
    if order < 0:
        raise ValueError("moment order must be nonnegative")
    return integrate_matrix(lambda x: x ** order * weight(x), rule)


def conjugate_weight(weight: MatrixWeight, f0, f0_degree: Optional[int] = None) -> MatrixWeight:
    """
    The weight x ↦ F0(x)·W(x)·F0(x)*.

    When F0 is a MatrixPolynomial its degree is read from it; the polynomial
    degree of the result is 2·deg F0 + deg W when both are known.
    """
    degree = getattr(f0, 'degree', f0_degree)
    if degree is not None and weight.polynomial_degree is not None:
        polynomial_degree = 2 * degree + weight.polynomial_degree
    else:
        polynomial_degree = None

    def evaluate(x: float) -> np.ndarray:
        value = as_square_matrix(f0(x), weight.size)
        return value @ weight(x) @ np.conj(value).T

    return MatrixWeight(weight.size, weight.support, evaluate, polynomial_degree, f"conjugated {weight.name}")


def equivalence_transform(weight: MatrixWeight, m) -> MatrixWeight:
    """
    The equivalent weight M·W·M* for a constant nonsingular M.

    Raises:
        SingularMatrixError: if M is numerically singular
    """
    matrix = as_square_matrix(m, weight.size)
    if is_numerically_singular(matrix):
        raise SingularMatrixError("equivalence transform needs a nonsingular matrix")
    adjoint = np.conj(matrix).T

    def evaluate(x: float) -> np.ndarray:
        return matrix @ weight(x) @ adjoint

    return MatrixWeight(weight.size, weight.support, evaluate, weight.polynomial_degree, f"equivalent {weight.name}")


@dataclass
class PsdReport:
    """Minimum eigenvalue per sample; `flagged` lists indices that fail."""

    sample_xs: List[float]
    min_eigenvalues: List[float]
    spectral_norms: List[float]
    flagged: List[int]

    @property
    def passed(self) -> bool:
        return not self.flagged

    @property
    def positive_definite(self) -> bool:
        return self.passed and all(
            value > app_config.PSD_TOLERANCE * norm
            for value, norm in zip(self.min_eigenvalues, self.spectral_norms)
        )


def psd_report(weight: MatrixWeight, sample_xs: Sequence[float]) -> PsdReport:
    """
    Check positive semidefiniteness at interior samples.

    A sample is flagged when its smallest eigenvalue is below
    −PSD_TOLERANCE × spectral norm, or when W vanishes there.
    """
    minima, norms, flagged = [], [], []
    for index, x in enumerate(sample_xs):
        value = weight(x)
        hermitian = 0.5 * (value + np.conj(value).T)
        eigenvalues = np.linalg.eigvalsh(hermitian)
        norm = float(np.max(np.abs(eigenvalues)))
        minima.append(float(eigenvalues[0]))
        norms.append(norm)
        if norm == 0.0 or eigenvalues[0] < -app_config.PSD_TOLERANCE * norm:
            flagged.append(index)
    if flagged:
        logger.warning("%s is not positive semidefinite at %d of %d samples", weight.name, len(flagged), len(minima))
    return PsdReport([float(x) for x in sample_xs], minima, norms, flagged)
