"""
Complex Projective Plane Model

Matrix functions built from the irreducible spherical functions of type
(n, 1) on P₂(ℂ) = SU(3)/U(2). For each n ≥ 0 the 2×2 sequence F_w,
w = 0, 1, …, is a pre-sequence for

    W(x) = diag(x(1−x)^{n+1}, x(1−x)^n)  on [0, 1]

with the recursion (1−x)·F_w = A_w·F_{w−1} + B_w·F_w + C_w·F_{w+1}, and
Q_w = F_w·F_0^{-1} is an orthogonal sequence for W' = F_0·W·F_0*.

Closed forms for Q_w, LC(Q_w) and the initial vectors Q_w(0) are kept twice:
the `printed_*` functions reproduce the formulas as they were published and
are used only to report differences; the others are consistent with Q_0 = I
and with the recursion-built sequence.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np
from numpy.polynomial import Polynomial
from scipy.special import factorial, poch

from src.numerics.diffop import HypergeometricConstants, MatrixFunction, RightDiffOperator, SampledRightOperator, hyper_operator
from src.numerics.hyper import HyperSeriesParams, pfq, pfq_coefficients
from src.numerics.matpoly import MatrixPolynomial
from src.numerics.presequence import PreSequence, SpectralMap, ThreeTermCoefficients
from src.numerics.weights import MatrixWeight

from src.models.base import Model, RowEquation

logger = logging.getLogger(__name__)

SUPPORT = (0.0, 1.0)


@dataclass(frozen=True)
class Cp2Params:
    """The K-type parameter n and the degree index w."""

    n: int
    w: int

    def __post_init__(self):
        if self.n < 0 or self.w < 0:
            raise ValueError(f"cp2 parameters must be nonnegative, got n={self.n}, w={self.w}")

    @property
    def c(self) -> float:
        product = (self.w + 1) * (self.w + self.n + 3)
        return product / (product + self.n)

    @property
    def s_w(self) -> int:
        return self.w * (self.w + self.n + 4) + 3 * (self.n + 2)


# =============================================================================
# F_w
# =============================================================================

def _f_entry_params(params: Cp2Params) -> List[List[HyperSeriesParams]]:
    n, w, c = params.n, params.w, params.c
    return [
        [
            HyperSeriesParams([-w, w + n + 3, 2], [3, 1]),
            HyperSeriesParams([-w, w + n + 3], [3]),
        ],
        [
            HyperSeriesParams([-w, w + n + 4], [3]),
            HyperSeriesParams([-w - 1, w + n + 3, c + 1], [3, c]),
        ],
    ]


def F_w(params: Cp2Params, x: float) -> np.ndarray:
    """F_w(x), entry by entry through pFq."""
    return np.array([[pfq(entry, x) for entry in row] for row in _f_entry_params(params)], dtype=complex)


def F_polynomial(params: Cp2Params) -> MatrixPolynomial:
    """F_w as a matrix polynomial of degree w + 1."""
    return MatrixPolynomial.from_entries(
        [[pfq_coefficients(entry) for entry in row] for row in _f_entry_params(params)]
    )


def F0_inverse(n: int, x: float) -> np.ndarray:
    """F_0(x)^{-1} = −1/((n+2)x)·[[1−(n+2)x, −1], [−1, 1]], for x ≠ 0."""
    if x == 0.0:
        raise ZeroDivisionError("F_0 is singular at x = 0")
    return -1.0 / ((n + 2) * x) * np.array([[1.0 - (n + 2) * x, -1.0], [-1.0, 1.0]], dtype=complex)


# =============================================================================
# Weights
# =============================================================================

def weight_W(n: int, x: float) -> np.ndarray:
    return np.diag([x * (1.0 - x) ** (n + 1), x * (1.0 - x) ** n]).astype(complex)


def weight_Wprime(n: int, x: float) -> np.ndarray:
    off_diagonal = 2.0 - (n + 3) * x
    block = np.array(
        [[2.0 - x, off_diagonal], [off_diagonal, 1.0 - x + (1.0 - (n + 2) * x) ** 2]],
        dtype=complex,
    )
    return x * (1.0 - x) ** n * block


def matrix_weight_W(n: int) -> MatrixWeight:
    return MatrixWeight(2, SUPPORT, lambda x: weight_W(n, x), n + 2, f"cp2 W (n={n})")


def matrix_weight_Wprime(n: int) -> MatrixWeight:
    return MatrixWeight(2, SUPPORT, lambda x: weight_Wprime(n, x), n + 3, f"cp2 W' (n={n})")


# =============================================================================
# Three-term recursion in s = 1 − x
# =============================================================================

def recursion_coeffs(n: int, w: int) -> ThreeTermCoefficients:
    """A_w, B_w, C_w of (1−x)·F_w = A_w·F_{w−1} + B_w·F_w + C_w·F_{w+1}."""
    if w < 0:
        raise ValueError("w must be nonnegative")
    a = np.array([
        [
            w * (w + n) * (w + n + 2) / ((w + n + 1) * (2 * w + n + 2) * (2 * w + n + 3)),
            w / ((w + 1) * (w + n + 1) * (2 * w + n + 3)),
        ],
        [
            0.0,
            w * (w + 2) * (w + n + 1) / ((w + 1) * (2 * w + n + 3) * (2 * w + n + 4)),
        ],
    ])
    b11 = (
        (w + 1) ** 2 * (w + 3) / ((w + 2) * (2 * w + n + 3) * (2 * w + n + 4))
        + 1.0 / ((w + 1) * (w + 2) * (w + n + 1) * (w + n + 2))
        + (w + n) * (w + n + 2) ** 2 / ((w + n + 1) * (2 * w + n + 2) * (2 * w + n + 3))
    )
    b22 = (
        (w + 1) * (w + 3) ** 2 / ((w + 2) * (2 * w + n + 4) * (2 * w + n + 5))
        + (w + n + 1) ** 2 * (w + n + 3) / ((w + n + 2) * (2 * w + n + 3) * (2 * w + n + 4))
    )
    b = np.array([
        [b11, (w + n + 3) / ((w + 2) * (w + n + 2) * (2 * w + n + 3))],
        [(w + n + 1) / ((w + 1) * (w + n + 2) * (2 * w + n + 4)), b22],
    ])
    c = np.array([
        [(w + 1) * (w + 3) * (w + n + 3) / ((w + 2) * (2 * w + n + 3) * (2 * w + n + 4)), 0.0],
        [
            (w + 3) / ((w + 2) * (w + n + 3) * (2 * w + n + 4)),
            (w + 3) * (w + n + 2) * (w + n + 4) / ((w + n + 3) * (2 * w + n + 4) * (2 * w + n + 5)),
        ],
    ])
    return ThreeTermCoefficients(a, b, c)


# =============================================================================
# Closed forms of Q_w = F_w·F_0^{-1}
# =============================================================================

def _q_terms(params: Cp2Params, q22_prefactor: float) -> List[List[List[Tuple[float, HyperSeriesParams]]]]:
    """Each entry as a list of (coefficient, series) pairs."""
    n, w, s = params.n, params.w, params.s_w
    shift = w * (w + n + 3) / (3 * (n + 2))
    second_row = HyperSeriesParams([-w, w + n + 4, s + 1], [4, s])
    q11 = [(1.0, HyperSeriesParams([-w, w + n + 3, 2], [3, 1]))]
    q12 = []
    if w > 0:
        # at w = 0 the coefficient vanishes and the series would not terminate
        first_row_tail = HyperSeriesParams([1 - w, w + n + 4], [4])
        q11.append((shift, first_row_tail))
        q12.append((-shift, first_row_tail))
    q21 = [(1.0, HyperSeriesParams([-w, w + n + 4], [3])), (-s / (3 * (n + 2)), second_row)]
    q22 = [(q22_prefactor, second_row)]
    return [[q11, q12], [q21, q22]]


def _evaluate_terms(terms, x: float) -> np.ndarray:
    return np.array(
        [[sum(coefficient * pfq(series, x) for coefficient, series in entry) for entry in row] for row in terms],
        dtype=complex,
    )


def _polynomial_terms(terms) -> MatrixPolynomial:
    return MatrixPolynomial.from_entries([
        [sum((coefficient * pfq_coefficients(series) for coefficient, series in entry), Polynomial([0.0]))
         for entry in row]
        for row in terms
    ])


def closed_form_Q(params: Cp2Params, x: float) -> np.ndarray:
    """Q_w(x) with the (2,2) entry scaled by s_w/(3(n+2)), so that Q_0 = I."""
    return _evaluate_terms(_q_terms(params, params.s_w / (3 * (params.n + 2))), x)


def closed_form_Q_polynomial(params: Cp2Params) -> MatrixPolynomial:
    return _polynomial_terms(_q_terms(params, params.s_w / (3 * (params.n + 2))))


def printed_closed_form_Q(params: Cp2Params, x: float) -> np.ndarray:
    """Q_w(x) with the published (2,2) prefactor s_w/(n+2)."""
    return _evaluate_terms(_q_terms(params, params.s_w / (params.n + 2)), x)


# =============================================================================
# Leading coefficients
# =============================================================================

def _lc_f22(params: Cp2Params) -> float:
    n, w, c = params.n, params.w, params.c
    return (-1) ** (w + 1) * poch(w + n + 3, w + 1) * (c + w + 1) / (poch(3, w + 1) * c)


def _lc_q11(params: Cp2Params) -> float:
    n, w = params.n, params.w
    return (-1) ** w * poch(w + n + 3, w) * 2 / ((2 + w) * factorial(w, exact=True))


def leading_coeffs(n: int, w: int) -> Tuple[np.ndarray, np.ndarray]:
    """LC(F_w) and LC(Q_w), the latter derived from the closed form of Q_w."""
    params = Cp2Params(n, w)
    s = params.s_w
    lc_f = np.array([[0.0, 0.0], [0.0, _lc_f22(params)]], dtype=complex)
    lc_q = np.array([
        [_lc_q11(params), 0.0],
        [
            (-1) ** (w + 1) * poch(w + n + 4, w) * 2 * w * (w + 3) / (factorial(w + 3, exact=True) * (n + 2)),
            (-1) ** w * poch(w + n + 4, w) * (s + w) / (3 * (n + 2) * poch(4, w)),
        ],
    ], dtype=complex)
    return lc_f, lc_q


def printed_leading_coeffs(n: int, w: int) -> Tuple[np.ndarray, np.ndarray]:
    """LC(F_w) and LC(Q_w) exactly as published."""
    params = Cp2Params(n, w)
    s = params.s_w
    lc_f = np.array([[0.0, 0.0], [0.0, _lc_f22(params)]], dtype=complex)
    lc_q = np.array([
        [_lc_q11(params), 0.0],
        [
            (-1) ** w * poch(w + n + 4, w) * w * (w - 3) / (poch(3, w + 1) * (n + 2)),
            (-1) ** w * poch(w + n + 4, w) * (s + w) / ((n + 2) * poch(4, w)),
        ],
    ], dtype=complex)
    return lc_f, lc_q


def printed_initial_vectors(n: int, w: int) -> np.ndarray:
    """Rows Q_{1,w}(0) and Q_{2,w}(0) as published."""
    factor = w / (3 * (n + 2))
    return factor * np.array([[w + n + 3, -w - n - 3], [-w - n - 4, w + n + 4]], dtype=complex)


# =============================================================================
# Differential operators
# =============================================================================

def lambda_w(n: int, w: int) -> Tuple[np.ndarray, float, float]:
    """Λ_w = diag(λ_{1,w}, λ_{2,w})."""
    first = float(-w * (w + n + 3))
    second = float(-w * (w + n + 4) - n - 2)
    return np.diag([first, second]).astype(complex), first, second


def _rational_zeroth_order(x: float) -> np.ndarray:
    if x == 0.0:
        raise ZeroDivisionError("the zeroth-order coefficient of D has a pole at x = 0")
    return np.array([[-1.0, 1.0 - x], [1.0, -1.0 + x]], dtype=complex) / x


def operator_D_coefficients(n: int) -> Tuple[MatrixPolynomial, MatrixPolynomial, Callable[[float], np.ndarray]]:
    """(A_2, A_1, A_0) of D = ∂²A_2 + ∂A_1 + A_0; A_0 carries a 1/x factor."""
    identity = np.eye(2)
    second = MatrixPolynomial(np.stack([0.0 * identity, identity, -identity]))
    first = MatrixPolynomial(np.stack([np.diag([2.0, 2.0]), np.diag([-(n + 4.0), -(n + 3.0)])]))
    return second, first, _rational_zeroth_order


def operator_D(n: int) -> SampledRightOperator:
    second, first, zeroth = operator_D_coefficients(n)
    return SampledRightOperator((zeroth, first, second), 2, SUPPORT)


def tilde_constants(n: int) -> HypergeometricConstants:
    """C, U, V of F_0·D·F_0^{-1}."""
    return HypergeometricConstants(
        np.array([[2 * n + 5, -1], [-2 * n - 3, 4 * n + 7]]) / (n + 2),
        np.array([[n + 4, 0], [-1, n + 5]]),
        np.diag([0, n + 2]),
    )


def make_presequence(n: int) -> PreSequence:
    """F_0, W and the recursion coefficients in the spectral variable 1 − x."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return PreSequence(
        size=2,
        F0=lambda x: F_w(Cp2Params(n, 0), x),
        coeff_gen=lambda w: recursion_coeffs(n, w),
        weight=matrix_weight_W(n),
        spectral_map=SpectralMap(-1.0, 1.0),
        functions=lambda w, x: F_w(Cp2Params(n, w), x),
        f0_polynomial=F_polynomial(Cp2Params(n, 0)),
        name=f"cp2(n={n})",
    )


class Cp2Model(Model):
    """Registry entry for the type (n, 1) spherical functions of P₂(ℂ)."""

    name = 'cp2'
    size = 2
    support = SUPPORT
    operator_window = (0.05, 0.95)

    def make_presequence(self, n: int) -> PreSequence:
        return make_presequence(n)

    def conjugated_weight(self, n: int) -> MatrixWeight:
        return matrix_weight_Wprime(n)

    def q_operator(self, n: int) -> RightDiffOperator:
        return hyper_operator(tilde_constants(n), SUPPORT)

    def f_operator(self, n: int) -> SampledRightOperator:
        return operator_D(n)

    def f_function(self, n: int, w: int) -> MatrixFunction:
        return MatrixFunction.from_polynomial(F_polynomial(Cp2Params(n, w)))

    def f_polynomial(self, n: int, w: int) -> MatrixPolynomial:
        return F_polynomial(Cp2Params(n, w))

    def eigenvalue_matrix(self, n: int, w: int) -> np.ndarray:
        return lambda_w(n, w)[0]

    def expected_constants(self, n: int) -> HypergeometricConstants:
        return tilde_constants(n)

    def extraction_inputs(self, n: int):
        _, first, zeroth = operator_D_coefficients(n)
        return MatrixFunction.from_polynomial(F_polynomial(Cp2Params(n, 0))), first, zeroth

    def expected_leading(self, n: int, w: int) -> Tuple[np.ndarray, np.ndarray]:
        return leading_coeffs(n, w)

    def row_equations(self, n: int, w: int) -> List[RowEquation]:
        constants = tilde_constants(n)
        _, first, second = lambda_w(n, w)
        identity = np.eye(2)
        return [
            (constants.U.T, constants.V.T + eigenvalue * identity, constants.C.T)
            for eigenvalue in (first, second)
        ]

    def printed_initial_vectors(self, n: int, w: int) -> np.ndarray:
        return printed_initial_vectors(n, w)

    def discrepancy_notes(self, n: int, w_max: int, checks: Sequence[str]) -> List[str]:
        notes = [
            "Q^w_21 is published as a function of u; it is evaluated as a function of x like its siblings.",
        ]
        printed_q0 = printed_closed_form_Q(Cp2Params(n, 0), 0.5)
        if not np.allclose(printed_q0, np.eye(2)):
            notes.append(
                f"published (2,2) prefactor s_w/(n+2) gives Q_0(2,2) = {printed_q0[1, 1].real:.17g}; "
                "s_w/(3(n+2)) is used so that Q_0 = I"
            )
        for w in range(w_max + 1):
            computed = leading_coeffs(n, w)[1]
            printed = printed_leading_coeffs(n, w)[1]
            for (i, j) in ((1, 0), (1, 1)):
                if not np.isclose(computed[i, j], printed[i, j], rtol=1e-12, atol=0.0):
                    notes.append(
                        f"LC(Q_{w}) entry ({i + 1},{j + 1}): published {printed[i, j].real:.17g}, "
                        f"closed form gives {computed[i, j].real:.17g}"
                    )
        return notes
