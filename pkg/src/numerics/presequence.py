"""
Pre-sequence Module

A pre-sequence {F_n} (matrix orthogonal functions with a three-term
recursion, A_0 = 0, C_n nonsingular and det F_0 ≠ 0 almost everywhere)
determines matrix polynomials Q_n of degree n with F_n = Q_n·F_0 that are
orthogonal for W' = F_0·W·F_0*. This module builds the Q_n, checks both
orthogonalities, and rebuilds the monic sequence of W' from moments alone
as an independent oracle.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import Polynomial

from src.config.settings import app_config
from src.numerics.exceptions import DegenerateWeightError, SingularMatrixError
from src.numerics.matpoly import (
    MatrixPolynomial,
    leading_coefficient,
    poly_left_mul,
    poly_mul_scalar_poly,
)
from src.numerics.quadrature import QuadratureRule, inner_product
from src.numerics.weights import MatrixWeight, conjugate_weight
from src.utils.helpers import as_square_matrix, is_numerically_singular

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ThreeTermCoefficients:
    """Coefficients of s·Q_n = A_n·Q_{n−1} + B_n·Q_n + C_n·Q_{n+1}."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        size = np.asarray(self.B).shape[0]
        for name in ('A', 'B', 'C'):
            object.__setattr__(self, name, as_square_matrix(getattr(self, name), size))


@dataclass(frozen=True)
class SpectralMap:
    """Affine change of variable s(x) = σx + τ with σ ≠ 0."""

    sigma: float = 1.0
    tau: float = 0.0

    def __post_init__(self):
        if self.sigma == 0.0:
            raise ValueError("spectral map needs a nonzero slope")

    @classmethod
    def identity(cls) -> 'SpectralMap':
        return cls(1.0, 0.0)

    def __call__(self, x):
        return self.sigma * x + self.tau

    def as_polynomial(self) -> Polynomial:
        return Polynomial([self.tau, self.sigma])


@dataclass(frozen=True, eq=False)
class PreSequence:
    """
    F_0 evaluator, recursion-coefficient generator, weight and spectral map.

    `functions(n, x)` optionally evaluates F_n directly (a closed form); when
    absent, F_n is produced from F_0 by running the recursion pointwise.
    `f0_polynomial` is set when F_0 is a matrix polynomial.
    """

    size: int
    F0: Callable[[float], np.ndarray] = field(repr=False)
    coeff_gen: Callable[[int], ThreeTermCoefficients] = field(repr=False)
    weight: MatrixWeight
    spectral_map: SpectralMap = SpectralMap()
    functions: Optional[Callable[[int, float], np.ndarray]] = field(default=None, repr=False)
    f0_polynomial: Optional[MatrixPolynomial] = field(default=None, repr=False)
    name: str = 'pre-sequence'

    def __post_init__(self):
        if np.any(self.coeff_gen(0).A != 0):
            raise ValueError("a pre-sequence needs A_0 = 0")

    def f_value(self, n: int, x: float) -> np.ndarray:
        if self.functions is not None:
            return as_square_matrix(self.functions(n, x), self.size)
        return run_function_recursion(self, n, x)[n]

    def conjugated_weight(self) -> MatrixWeight:
        """W' = F_0·W·F_0*."""
        return conjugate_weight(self.weight, self.f0_polynomial or self.F0)

    def singular_f0_samples(self, sample_xs: Sequence[float], threshold: float = 1e-12) -> List[float]:
        """Samples where |det F_0| does not exceed the threshold."""
        return [float(x) for x in sample_xs if abs(np.linalg.det(as_square_matrix(self.F0(x)))) <= threshold]


def _require_nonsingular_c(coefficients: ThreeTermCoefficients, index: int) -> None:
    if is_numerically_singular(coefficients.C):
        raise SingularMatrixError(f"C_{index} is numerically singular", index=index)


def build_Q(ps: PreSequence, n_max: int) -> List[MatrixPolynomial]:
    """
    Q_0 … Q_{n_max} in the variable x.

    The recursion Q_{n+1} = C_n^{-1}(s·Q_n − A_n·Q_{n−1} − B_n·Q_n) is run with
    s = σx + τ multiplied in as a scalar polynomial, so every Q_n is built in x
    directly.
    Only the coefficients and the spectral map enter, no integration.

    Raises:
        ValueError: if n_max < 0
        SingularMatrixError: if some C_n (n < n_max) is singular; `index` names n
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")

    spectral = [ps.spectral_map.tau, ps.spectral_map.sigma]
    qs = [MatrixPolynomial.identity(ps.size)]
    previous = MatrixPolynomial.zero(ps.size)
    for n in range(n_max):
        coefficients = ps.coeff_gen(n)
        _require_nonsingular_c(coefficients, n)
        current = qs[n]
        rhs = poly_mul_scalar_poly(current, spectral) - poly_left_mul(coefficients.A, previous) \
            - poly_left_mul(coefficients.B, current)
        qs.append(MatrixPolynomial(np.linalg.solve(coefficients.C, rhs.coeffs)))
        previous = current

    logger.debug("built Q_0..Q_%d for %s", n_max, ps.name)
    return qs


def run_function_recursion(ps: PreSequence, n_max: int, x: float) -> List[np.ndarray]:
    """F_0(x) … F_{n_max}(x) from F_0(x) and the recursion coefficients."""
    s = ps.spectral_map(x)
    values = [as_square_matrix(ps.F0(x), ps.size)]
    previous = np.zeros_like(values[0])
    for n in range(n_max):
        coefficients = ps.coeff_gen(n)
        _require_nonsingular_c(coefficients, n)
        rhs = s * values[n] - coefficients.A @ previous - coefficients.B @ values[n]
        previous = values[n]
        values.append(np.linalg.solve(coefficients.C, rhs))
    return values


@dataclass
class FactorizationReport:
    """Per-index max relative residual of F_n − Q_n·F_0 over the samples."""

    residuals: List[float]
    tolerance: float

    @property
    def max_residual(self) -> float:
        return max(self.residuals)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


def verify_factorization(
    ps: PreSequence,
    qs: Sequence[MatrixPolynomial],
    sample_xs: Sequence[float],
    tol: Optional[float] = None,
) -> FactorizationReport:
    """Check F_n(x) = Q_n(x)·F_0(x) at every sample."""
    tolerance = app_config.RESIDUAL_TOLERANCE if tol is None else tol
    residuals = []
    for n, q in enumerate(qs):
        worst = 0.0
        for x in sample_xs:
            f_n = ps.f_value(n, x)
            difference = np.linalg.norm(f_n - q(x) @ as_square_matrix(ps.F0(x), ps.size))
            scale = np.linalg.norm(f_n)
            worst = max(worst, difference / scale if scale > 0.0 else difference)
        residuals.append(float(worst))
    return FactorizationReport(residuals, tolerance)


@dataclass
class GramMatrix:
    """Blocks G[i, j] = ∫ Q_i W Q_j* dx, shape (n, n, N, N)."""

    blocks: np.ndarray

    @property
    def count(self) -> int:
        return self.blocks.shape[0]

    def diagonal_norms(self) -> np.ndarray:
        return np.array([np.linalg.norm(self.blocks[i, i]) for i in range(self.count)])

    def offdiagonal_ratios(self) -> np.ndarray:
        """‖G_ij‖ / sqrt(‖G_ii‖·‖G_jj‖), zero on the diagonal."""
        norms = self.diagonal_norms()
        ratios = np.zeros((self.count, self.count))
        for i in range(self.count):
            for j in range(self.count):
                if i != j:
                    ratios[i, j] = np.linalg.norm(self.blocks[i, j]) / np.sqrt(norms[i] * norms[j])
        return ratios

    def max_offdiagonal_ratio(self) -> float:
        return float(self.offdiagonal_ratios().max()) if self.count > 1 else 0.0

    def is_block_diagonal(self, tol: Optional[float] = None) -> bool:
        tolerance = app_config.GRAM_TOLERANCE if tol is None else tol
        return self.max_offdiagonal_ratio() <= tolerance


def _gram_from_values(values: np.ndarray, weight: MatrixWeight, rule: QuadratureRule) -> GramMatrix:
    """values has shape (count, nodes, N, N); nodes are summed in ascending order."""
    count, _, size, _ = values.shape
    blocks = np.zeros((count, count, size, size), dtype=complex)
    for k, (node, w) in enumerate(zip(rule.nodes, rule.weights)):
        at_node = values[:, k]
        weighted = np.einsum('iab,bc->iac', at_node, weight(float(node)))
        blocks = blocks + w * np.einsum('iac,jdc->ijad', weighted, np.conj(at_node))

    for i in range(count):
        diagonal = 0.5 * (blocks[i, i] + np.conj(blocks[i, i]).T)
        eigenvalues = np.linalg.eigvalsh(diagonal)
        if eigenvalues[0] <= app_config.PSD_TOLERANCE * abs(eigenvalues[-1]):
            raise DegenerateWeightError(f"Gram block ({i}, {i}) is not positive definite")
    return GramMatrix(blocks)


def gram_matrix(qs: Sequence[MatrixPolynomial], wprime: MatrixWeight, rule: QuadratureRule) -> GramMatrix:
    """
    Gram blocks of the Q_n under W'.

    Raises:
        DegenerateWeightError: if a diagonal block is not positive definite
    """
    values = np.stack([q(rule.nodes) for q in qs])
    return _gram_from_values(values, wprime, rule)


def f_level_gram(ps: PreSequence, n_max: int, rule: QuadratureRule) -> GramMatrix:
    """Gram blocks ∫ F_i W F_j* dx for i, j ≤ n_max."""
    values = np.zeros((n_max + 1, rule.size, ps.size, ps.size), dtype=complex)
    for k, node in enumerate(rule.nodes):
        if ps.functions is not None:
            column = [ps.f_value(n, float(node)) for n in range(n_max + 1)]
        else:
            column = run_function_recursion(ps, n_max, float(node))
        values[:, k] = np.stack(column)
    return _gram_from_values(values, ps.weight, rule)


def _right_divide(m: np.ndarray, n: np.ndarray) -> np.ndarray:
    """M·N^{-1}."""
    return np.linalg.solve(n.T, m.T).T


@dataclass
class MonicRecursion:
    """
    Monic sequence x·P_n = P_{n+1} + B̃_n·P_n + Ã_n·P_{n−1} rebuilt from W'.

    A_tilde[0] is the zero matrix; norms[n] = (P_n, P_n).
    """

    A_tilde: List[np.ndarray]
    B_tilde: List[np.ndarray]
    polynomials: List[MatrixPolynomial]
    norms: List[np.ndarray]


def _checked_norm(value: np.ndarray, index: int) -> np.ndarray:
    if is_numerically_singular(value):
        raise DegenerateWeightError(f"(P_{index}, P_{index}) is numerically singular")
    return value


def recursion_from_moments(wprime: MatrixWeight, n_max: int, rule: QuadratureRule) -> MonicRecursion:
    """
    Stieltjes procedure with the matrix inner product of W'.

    Raises:
        DegenerateWeightError: if some (P_n, P_n) is numerically singular
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if wprime.polynomial_degree is not None and rule.exactness_degree < 2 * n_max + 1 + wprime.polynomial_degree:
        logger.warning("rule of %d nodes is not exact for the moment recursion up to n=%d", rule.size, n_max)

    polynomials = [MatrixPolynomial.identity(wprime.size)]
    norms = [_checked_norm(inner_product(polynomials[0], polynomials[0], wprime, rule), 0)]
    a_tilde = [np.zeros((wprime.size, wprime.size), dtype=complex)]
    b_tilde = []
    for n in range(n_max):
        current = polynomials[n]
        shifted = poly_mul_scalar_poly(current, [0.0, 1.0])
        b = _right_divide(inner_product(shifted, current, wprime, rule), norms[n])
        following = shifted - poly_left_mul(b, current)
        if n > 0:
            a = _right_divide(inner_product(shifted, polynomials[n - 1], wprime, rule), norms[n - 1])
            following = following - poly_left_mul(a, polynomials[n - 1])
            a_tilde.append(a)
        b_tilde.append(b)
        polynomials.append(following)
        norms.append(_checked_norm(inner_product(following, following, wprime, rule), n + 1))
    return MonicRecursion(a_tilde, b_tilde, polynomials, norms)


def monic_normalize(qs: Sequence[MatrixPolynomial]) -> Tuple[List[MatrixPolynomial], List[np.ndarray]]:
    """
    Split Q_n = M_n·P_n with M_n = LC(Q_n) and P_n monic.

    Raises:
        SingularMatrixError: if some LC(Q_n) is singular; `index` names n
    """
    monic, multipliers = [], []
    for n, q in enumerate(qs):
        lead = leading_coefficient(q)
        if not lead.nonsingular:
            raise SingularMatrixError(f"leading coefficient of Q_{n} is singular", index=n)
        monic.append(MatrixPolynomial(np.linalg.solve(lead.matrix, q.coeffs)))
        multipliers.append(lead.matrix)
    return monic, multipliers


def equivalent_sequence(qs: Sequence[MatrixPolynomial], m) -> List[MatrixPolynomial]:
    """Q_n ↦ M·Q_n·M^{-1}, the MOP sequence of the equivalent weight M·W·M*."""
    matrix = as_square_matrix(m)
    if is_numerically_singular(matrix):
        raise SingularMatrixError("equivalence needs a nonsingular matrix")
    inverse = np.linalg.inv(matrix)
    return [MatrixPolynomial(matrix @ q.coeffs @ inverse) for q in qs]


def fit_recursion_coefficients(
    f_prev: Optional[Sequence[np.ndarray]],
    f_cur: Sequence[np.ndarray],
    f_next: Sequence[np.ndarray],
    spectral_values: Sequence[float],
) -> ThreeTermCoefficients:
    """
    Least-squares (A, B, C) with s·F_cur = A·F_prev + B·F_cur + C·F_next on samples.

    With f_prev None the fit is for index 0 and A is fixed to zero.
    """
    blocks = [f_cur, f_next] if f_prev is None else [f_prev, f_cur, f_next]
    design = np.hstack([np.vstack([block[k] for block in blocks]) for k in range(len(f_cur))])
    target = np.hstack([s * value for s, value in zip(spectral_values, f_cur)])
    solution, *_ = np.linalg.lstsq(design.T, target.T, rcond=None)
    fitted = solution.T
    size = f_cur[0].shape[0]
    parts = [fitted[:, i * size:(i + 1) * size] for i in range(len(blocks))]
    if f_prev is None:
        parts.insert(0, np.zeros((size, size), dtype=complex))
    return ThreeTermCoefficients(*parts)


@dataclass
class RecursionReport:
    """
    Per-index max residual of s·F_n − A_n·F_{n−1} − B_n·F_n − C_n·F_{n+1}.

    `offending` maps a failing index to the coefficient entry whose supplied
    value differs most from a least-squares refit, e.g. {'matrix': 'B', 'entry': (0, 0), ...}.
    """

    residuals: List[float]
    tolerance: float
    offending: Dict[int, Dict] = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.residuals)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


def _locate_offending_entry(supplied: ThreeTermCoefficients, fitted: ThreeTermCoefficients) -> Dict:
    worst = None
    for name in ('A', 'B', 'C'):
        difference = np.abs(getattr(supplied, name) - getattr(fitted, name))
        i, j = np.unravel_index(np.argmax(difference), difference.shape)
        if worst is None or difference[i, j] > worst['difference']:
            worst = {
                'matrix': name,
                'entry': (int(i), int(j)),
                'supplied': complex(getattr(supplied, name)[i, j]),
                'fitted': complex(getattr(fitted, name)[i, j]),
                'difference': float(difference[i, j]),
            }
    return worst


def check_recursion(
    ps: PreSequence,
    n_max: int,
    sample_xs: Sequence[float],
    tol: Optional[float] = None,
) -> RecursionReport:
    """
    Residual of the supplied recursion on the F_n themselves, n ≤ n_max.

    Needs a closed form for F_n (`ps.functions`); the residual is relative to
    ‖A_nF_{n−1}‖ + ‖B_nF_n‖ + ‖C_nF_{n+1}‖ at each sample.
    """
    if ps.functions is None:
        raise ValueError("checking a recursion needs F_n evaluators independent of the recursion")
    tolerance = app_config.RESIDUAL_TOLERANCE if tol is None else tol
    values = [[ps.f_value(n, x) for x in sample_xs] for n in range(n_max + 2)]
    spectral = [ps.spectral_map(x) for x in sample_xs]

    report = RecursionReport([], tolerance)
    for n in range(n_max + 1):
        coefficients = ps.coeff_gen(n)
        worst = 0.0
        for k, s in enumerate(spectral):
            previous = values[n - 1][k] if n > 0 else np.zeros((ps.size, ps.size))
            terms = [coefficients.A @ previous, coefficients.B @ values[n][k], coefficients.C @ values[n + 1][k]]
            residual = np.linalg.norm(s * values[n][k] - sum(terms))
            scale = sum(np.linalg.norm(term) for term in terms)
            worst = max(worst, residual / scale if scale > 0.0 else residual)
        report.residuals.append(float(worst))
        if worst > tolerance:
            fitted = fit_recursion_coefficients(values[n - 1] if n > 0 else None, values[n], values[n + 1], spectral)
            report.offending[n] = _locate_offending_entry(coefficients, fitted)
            logger.warning("recursion residual %.3e at index %d; worst entry %s", worst, n, report.offending[n])
    return report
