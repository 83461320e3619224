"""
Differential Operator Module

Matrix differential operators acting from the right, D = Σ ∂^i·F_i(x) with
Q·D = Σ ∂^i(Q)·F_i. Polynomial operators live in RightDiffOperator and act
on MatrixPolynomial values; operators with rational coefficients are kept
as evaluables in SampledRightOperator and act pointwise on MatrixFunction
values.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from src.config.settings import app_config
from src.numerics.exceptions import (
    InsufficientSamplesError,
    NotPolynomialError,
    SingularMatrixError,
    SizeMismatchError,
)
from src.numerics.matpoly import MatrixPolynomial, leading_coefficient, poly_derivative, poly_left_mul, poly_right_mul
from src.utils.helpers import as_square_matrix, check_same_size, is_numerically_singular, relative_residual

logger = logging.getLogger(__name__)

MatrixEvaluable = Callable[[float], np.ndarray]

# |det Ψ(x)| at or below this is treated as a singular sample
DETERMINANT_FLOOR = 1e-10


@dataclass(frozen=True, eq=False)
class RightDiffOperator:
    """Polynomial-coefficient operator; coeffs[i] multiplies ∂^i from the right."""

    coeffs: Tuple[MatrixPolynomial, ...]
    support: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise ValueError("an operator needs at least one coefficient")
        check_same_size([c.size for c in coeffs])
        object.__setattr__(self, 'coeffs', coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def size(self) -> int:
        return self.coeffs[0].size

    def coefficients_at(self, x: float) -> List[np.ndarray]:
        return [c(x) for c in self.coeffs]

    def __call__(self, q: MatrixPolynomial) -> MatrixPolynomial:
        return apply_right(self, q)


@dataclass(frozen=True, eq=False)
class HypergeometricConstants:
    """
    C, U, V of ∂²·x(1−x) + ∂·(C − xU) − V.

    The residual fields record how well the sampled data fitted the affine
    and constant shapes when the constants were extracted.
    """

    C: np.ndarray
    U: np.ndarray
    V: np.ndarray
    affine_residual: float = 0.0
    constant_residual: float = 0.0

    def __post_init__(self):
        size = np.asarray(self.C).shape[0]
        for name in ('C', 'U', 'V'):
            object.__setattr__(self, name, as_square_matrix(getattr(self, name), size))


def apply_right(operator: RightDiffOperator, q: MatrixPolynomial) -> MatrixPolynomial:
    """
    Q·D = Σ ∂^i(Q)·F_i.

    Raises:
        SizeMismatchError: if Q and D have different sizes
    """
    if q.size != operator.size:
        raise SizeMismatchError(f"polynomial size {q.size} does not match operator size {operator.size}")
    result = MatrixPolynomial.zero(q.size)
    for i, coefficient in enumerate(operator.coeffs):
        result = result + poly_derivative(q, i) @ coefficient
    return result


def hyper_operator(constants: HypergeometricConstants, interval: Tuple[float, float] = (0.0, 1.0)) -> RightDiffOperator:
    """The operator ∂²·x(1−x) + ∂·(C − xU) − V."""
    size = constants.C.shape[0]
    identity = np.eye(size, dtype=complex)
    return RightDiffOperator(
        (
            MatrixPolynomial.constant(-constants.V),
            MatrixPolynomial(np.stack([constants.C, -constants.U])),
            MatrixPolynomial(np.stack([0.0 * identity, identity, -identity])),
        ),
        interval,
    )


def is_hypergeometric(operator: RightDiffOperator) -> bool:
    """True when the coefficient of ∂^j has degree at most j."""
    return all(c.degree <= j for j, c in enumerate(operator.coeffs))


def conjugate_by_constant(operator: RightDiffOperator, m) -> RightDiffOperator:
    """M·D·M^{-1} for a constant nonsingular M: each F_i becomes M·F_i·M^{-1}."""
    matrix = as_square_matrix(m, operator.size)
    if is_numerically_singular(matrix):
        raise SingularMatrixError("conjugation needs a nonsingular matrix")
    inverse = np.linalg.inv(matrix)
    return RightDiffOperator(
        tuple(poly_right_mul(poly_left_mul(matrix, c), inverse) for c in operator.coeffs),
        operator.support,
    )


@dataclass(frozen=True, eq=False)
class MatrixFunction:
    """A smooth matrix function with its first two derivatives as evaluables."""

    value: MatrixEvaluable
    first: MatrixEvaluable
    second: MatrixEvaluable

    @classmethod
    def from_polynomial(cls, p: MatrixPolynomial) -> 'MatrixFunction':
        return cls(p, p.derivative(1), p.derivative(2))

    @classmethod
    def constant(cls, matrix) -> 'MatrixFunction':
        value = as_square_matrix(matrix)
        zero = np.zeros_like(value)
        return cls(lambda x: value, lambda x: zero, lambda x: zero)

    def derivatives_at(self, x: float) -> List[np.ndarray]:
        return [as_square_matrix(self.value(x)), as_square_matrix(self.first(x)), as_square_matrix(self.second(x))]

    def central_differences(self, x: float, step: float) -> Tuple[np.ndarray, np.ndarray]:
        """First and second derivatives of `value` by central differences."""
        before = as_square_matrix(self.value(x - step))
        middle = as_square_matrix(self.value(x))
        after = as_square_matrix(self.value(x + step))
        return (after - before) / (2.0 * step), (after - 2.0 * middle + before) / (step * step)


@dataclass(frozen=True, eq=False)
class SampledRightOperator:
    """
    Operator of order ≤ 2 whose coefficients are evaluables.

    Coefficients may be rational (e.g. carry a 1/x factor), so the operator is
    only ever applied at points where every coefficient is finite.
    """

    coefficients: Tuple[MatrixEvaluable, ...]
    size: int
    support: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        coefficients = tuple(self.coefficients)
        if not 1 <= len(coefficients) <= 3:
            raise ValueError("sampled operators have order 0, 1 or 2")
        object.__setattr__(self, 'coefficients', coefficients)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def from_polynomial_operator(cls, operator: RightDiffOperator) -> 'SampledRightOperator':
        return cls(operator.coeffs, operator.size, operator.support)

    def coefficients_at(self, x: float) -> List[np.ndarray]:
        return [as_square_matrix(c(x), self.size) for c in self.coefficients]

    def apply(self, function: MatrixFunction, x: float) -> np.ndarray:
        """(F·D)(x) = Σ F^{(i)}(x)·A_i(x)."""
        derivatives = function.derivatives_at(x)
        return sum(derivatives[i] @ a for i, a in enumerate(self.coefficients_at(x)))


@dataclass
class EigenReport:
    """
    Per-index max relative residual of an eigen-identity over the samples.

    `eigenvalues` is filled by membership checks with the fitted Γ_n.
    """

    residuals: List[float]
    tolerance: float
    eigenvalues: List[np.ndarray] = field(default_factory=list)

    @property
    def max_residual(self) -> float:
        return max(self.residuals) if self.residuals else 0.0

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


def _scaled_residual(lhs: Sequence[np.ndarray], rhs: Sequence[np.ndarray]) -> float:
    """max‖lhs − rhs‖ over samples, relative to max‖rhs‖ (absolute when rhs vanishes)."""
    scale = max(np.linalg.norm(value) for value in rhs)
    worst = max(np.linalg.norm(a - b) for a, b in zip(lhs, rhs))
    return float(worst / scale) if scale > 0.0 else float(worst)


def check_eigenfunction(
    operator: RightDiffOperator,
    qs: Sequence[MatrixPolynomial],
    lambdas: Sequence,
    sample_xs: Sequence[float],
    tol: Optional[float] = None,
) -> EigenReport:
    """Residual of Q_n·D = Λ_n·Q_n at the samples, one entry per n."""
    if len(qs) != len(lambdas):
        raise ValueError(f"{len(qs)} polynomials but {len(lambdas)} eigenvalues")
    tolerance = app_config.RESIDUAL_TOLERANCE if tol is None else tol
    residuals = []
    for q, lam in zip(qs, lambdas):
        image = apply_right(operator, q)
        matrix = as_square_matrix(lam, q.size)
        lhs = [image(x) for x in sample_xs]
        rhs = [matrix @ q(x) for x in sample_xs]
        residuals.append(_scaled_residual(lhs, rhs))
    return EigenReport(residuals, tolerance)


def check_eigenfunction_sampled(
    operator: SampledRightOperator,
    functions: Sequence[MatrixFunction],
    lambdas: Sequence,
    sample_xs: Sequence[float],
    tol: Optional[float] = None,
) -> EigenReport:
    """Residual of F_n·D = Λ_n·F_n for evaluable F_n and a sampled operator."""
    if len(functions) != len(lambdas):
        raise ValueError(f"{len(functions)} functions but {len(lambdas)} eigenvalues")
    tolerance = app_config.RESIDUAL_TOLERANCE * app_config.SAMPLED_TOLERANCE_FACTOR if tol is None else tol
    residuals = []
    for function, lam in zip(functions, lambdas):
        matrix = as_square_matrix(lam, operator.size)
        lhs = [operator.apply(function, x) for x in sample_xs]
        rhs = [matrix @ as_square_matrix(function.value(x)) for x in sample_xs]
        residuals.append(_scaled_residual(lhs, rhs))
    return EigenReport(residuals, tolerance)


def eigenvalue_sequence(operator: RightDiffOperator, qs: Sequence[MatrixPolynomial]) -> List[np.ndarray]:
    """
    Γ_n = [x^n](Q_n·D)·LC(Q_n)^{-1}.

    This is the only candidate for Q_n·D = Γ_n·Q_n when the operator
    preserves degrees.
    """
    eigenvalues = []
    for n, q in enumerate(qs):
        lead = leading_coefficient(q)
        if not lead.nonsingular:
            raise SingularMatrixError(f"leading coefficient of Q_{n} is singular", index=n)
        image = apply_right(operator, q)
        top = image.coeffs[lead.degree] if image.degree >= lead.degree else np.zeros_like(lead.matrix)
        eigenvalues.append(np.linalg.solve(lead.matrix.T, top.T).T)
    return eigenvalues


def check_membership(
    operator: RightDiffOperator,
    qs: Sequence[MatrixPolynomial],
    sample_xs: Sequence[float],
    tol: Optional[float] = None,
) -> EigenReport:
    """Does D have every Q_n as an eigenfunction? Γ_n is fitted, then checked."""
    eigenvalues = eigenvalue_sequence(operator, qs)
    report = check_eigenfunction(operator, qs, eigenvalues, sample_xs, tol)
    report.eigenvalues = eigenvalues
    return report


def _checked_inverse(psi_value: np.ndarray, x: float) -> np.ndarray:
    if abs(np.linalg.det(psi_value)) <= DETERMINANT_FLOOR:
        raise SingularMatrixError(f"Ψ is singular at x={x}")
    return np.linalg.inv(psi_value)


def conjugate_operator_numeric(operator, psi: MatrixFunction, x: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Coefficients of Ψ·D·Ψ^{-1} at x, lowest order first.

    For D = ∂²A_2 + ∂A_1 + A_0 they are (Ψ″A_2 + Ψ′A_1 + ΨA_0)Ψ^{-1},
    (2Ψ′A_2 + ΨA_1)Ψ^{-1} and ΨA_2Ψ^{-1}. `operator` may be polynomial or
    sampled; orders below two are padded with zeros.

    Raises:
        SingularMatrixError: if Ψ(x) is singular
    """
    value, first, second = psi.derivatives_at(x)
    coefficients = operator.coefficients_at(x)
    if len(coefficients) > 3:
        raise ValueError("conjugation is implemented for operators of order at most two")
    coefficients = coefficients + [np.zeros_like(value)] * (3 - len(coefficients))
    a0, a1, a2 = coefficients
    inverse = _checked_inverse(value, x)
    return (
        (second @ a2 + first @ a1 + value @ a0) @ inverse,
        (2.0 * first @ a2 + value @ a1) @ inverse,
        value @ a2 @ inverse,
    )


def extract_hyper_constants(
    psi: MatrixFunction,
    a1: MatrixEvaluable,
    a0: MatrixEvaluable,
    sample_xs: Sequence[float],
    tol: Optional[float] = None,
) -> HypergeometricConstants:
    """
    C, U, V such that Ψ·(∂²x(1−x) + ∂A_1 + A_0)·Ψ^{-1} = ∂²x(1−x) + ∂(C − xU) − V.

    G(x) = (2x(1−x)Ψ′ + ΨA_1)Ψ^{-1} is fitted as C − xU from the two samples
    nearest the middle of the sample range and checked at the others;
    V(x) = −(x(1−x)Ψ″ + Ψ′A_1 + ΨA_0)Ψ^{-1} is checked to be constant.

    Raises:
        InsufficientSamplesError: with fewer than three distinct samples
        SingularMatrixError: if Ψ is singular at a sample
        NotPolynomialError: if G is not affine or V is not constant
    """
    xs = np.unique(np.asarray(sample_xs, dtype=float))
    if xs.size < 3:
        raise InsufficientSamplesError("constant extraction needs at least three distinct samples")
    tolerance = app_config.RESIDUAL_TOLERANCE if tol is None else tol

    g_values, v_values = [], []
    for x in xs:
        value, first, second = psi.derivatives_at(float(x))
        inverse = _checked_inverse(value, float(x))
        first_order = as_square_matrix(a1(float(x)))
        zeroth_order = as_square_matrix(a0(float(x)))
        weight = x * (1.0 - x)
        g_values.append((2.0 * weight * first + value @ first_order) @ inverse)
        v_values.append(-(weight * second + first @ first_order + value @ zeroth_order) @ inverse)

    middle = 0.5 * (xs[0] + xs[-1])
    i, j = sorted(np.argsort(np.abs(xs - middle))[:2])
    u = -(g_values[j] - g_values[i]) / (xs[j] - xs[i])
    c = g_values[i] + xs[i] * u
    v = v_values[i]

    affine = max(
        relative_residual(g, c - x * u, scale=np.linalg.norm(c) + abs(x) * np.linalg.norm(u))
        for x, g in zip(xs, g_values)
    )
    constant = max(relative_residual(value, v) for value in v_values)
    logger.debug("extracted constants: affine residual %.3e, constant residual %.3e", affine, constant)
    if affine > tolerance:
        raise NotPolynomialError(f"first-order coefficient is not affine (residual {affine:.3e})")
    if constant > tolerance:
        raise NotPolynomialError(f"zeroth-order coefficient is not constant (residual {constant:.3e})")
    return HypergeometricConstants(c, u, v, float(affine), float(constant))
