"""
Legendre Control Model

The scalar case N = 1: weight 1 on [−1, 1], F_0 = 1, so the pre-sequence is
the Legendre polynomials themselves with

    x·P_n = n/(2n+1)·P_{n−1} + (n+1)/(2n+1)·P_{n+1}

and the eigen-operator ∂²(1−x²) − ∂·2x with eigenvalue −n(n+1). The
parameter n of the other models has no meaning here and must be 0.
"""

import numpy as np
from numpy.polynomial import Legendre, Polynomial
from scipy.special import eval_legendre

from src.config.settings import app_config
from src.numerics.diffop import MatrixFunction, RightDiffOperator, SampledRightOperator
from src.numerics.matpoly import MatrixPolynomial
from src.numerics.presequence import PreSequence, SpectralMap, ThreeTermCoefficients
from src.numerics.weights import MatrixWeight, constant_weight

from src.models.base import Model

SUPPORT = (-1.0, 1.0)


def recursion_coeffs(k: int) -> ThreeTermCoefficients:
    return ThreeTermCoefficients([[k / (2 * k + 1)]], [[0.0]], [[(k + 1) / (2 * k + 1)]])


def legendre_polynomial(k: int) -> MatrixPolynomial:
    scalar = Legendre.basis(k).convert(kind=Polynomial)
    return MatrixPolynomial.from_entries([[scalar]])


def legendre_operator() -> RightDiffOperator:
    """∂²(1−x²) − ∂·2x as a 1×1 polynomial operator."""
    return RightDiffOperator(
        (
            MatrixPolynomial.zero(1),
            MatrixPolynomial.from_entries([[[0.0, -2.0]]]),
            MatrixPolynomial.from_entries([[[1.0, 0.0, -1.0]]]),
        ),
        SUPPORT,
    )


class LegendreModel(Model):
    """Registry entry for the scalar Legendre pipeline."""

    name = 'legendre'
    size = 1
    support = SUPPORT

    def validate(self, n: int) -> None:
        if n != 0:
            raise ValueError("the legendre model has no parameter; use n = 0")

    def make_presequence(self, n: int = 0) -> PreSequence:
        self.validate(n)
        return PreSequence(
            size=1,
            F0=lambda x: np.ones((1, 1), dtype=complex),
            coeff_gen=recursion_coeffs,
            weight=constant_weight([[1.0]], SUPPORT, 'legendre'),
            spectral_map=SpectralMap.identity(),
            functions=lambda k, x: np.array([[eval_legendre(k, x)]], dtype=complex),
            f0_polynomial=MatrixPolynomial.identity(1),
            name='legendre',
        )

    def conjugated_weight(self, n: int) -> MatrixWeight:
        return constant_weight([[1.0]], SUPPORT, 'legendre')

    def default_nodes(self, n: int, w_max: int, order: int = 0) -> int:
        return max(w_max, order) + app_config.NODE_MARGIN

    def q_operator(self, n: int) -> RightDiffOperator:
        return legendre_operator()

    def f_operator(self, n: int) -> SampledRightOperator:
        return SampledRightOperator.from_polynomial_operator(legendre_operator())

    def f_function(self, n: int, w: int) -> MatrixFunction:
        return MatrixFunction.from_polynomial(legendre_polynomial(w))

    def f_polynomial(self, n: int, w: int) -> MatrixPolynomial:
        return legendre_polynomial(w)

    def eigenvalue_matrix(self, n: int, w: int) -> np.ndarray:
        return np.array([[-w * (w + 1)]], dtype=complex)
