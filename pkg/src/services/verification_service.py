"""
Verification Service Module

Runs the named checks of `mopkit verify` against a registered model and
collects them into a Report. Also produces the polynomial tables of
`mopkit generate` and the moment tables of `mopkit moments`.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from src.config.settings import app_config
from src.models import Model, get_model
from src.numerics.commutant import is_irreducible, minimum_samples
from src.numerics.diffop import check_eigenfunction, check_eigenfunction_sampled, extract_hyper_constants
from src.numerics.exceptions import MopkitError
from src.numerics.hyper import matrix_2h1_coefficients, ode_residual
from src.numerics.matpoly import MatrixPolynomial, leading_coefficient
from src.numerics.presequence import (
    PreSequence,
    build_Q,
    check_recursion,
    f_level_gram,
    gram_matrix,
    monic_normalize,
    recursion_from_moments,
    verify_factorization,
)
from src.numerics.quadrature import QuadratureRule, gauss_legendre_rule
from src.numerics.weights import moment
from src.services.report import FAIL, CheckResult, Report
from src.utils.helpers import relative_residual, sample_points

logger = logging.getLogger(__name__)


@dataclass
class RunContext:
    """Objects shared by the checks of one run."""

    model: Model
    n: int
    w_max: int
    presequence: PreSequence
    qs: List[MatrixPolynomial]
    rule: QuadratureRule
    sample_xs: np.ndarray
    operator_xs: np.ndarray
    tol: float
    gram_tol: float
    seed: Optional[int]
    notes: List[str] = field(default_factory=list)


class VerificationService:
    """
    Service class that orchestrates the numerical checks.

    Each check returns a CheckResult; numerical errors raised inside a check
    turn it into a failure instead of aborting the whole run.
    """

    def __init__(self):
        self._checks: Dict[str, Callable[[RunContext], CheckResult]] = {
            'gram': self._check_gram,
            'factorization': self._check_factorization,
            'recursion': self._check_recursion,
            'eigen': self._check_eigen,
            'constants': self._check_constants,
            'commutant': self._check_commutant,
            'hyper-rows': self._check_hyper_rows,
            'leading': self._check_leading,
            'monic': self._check_monic,
        }

    @staticmethod
    def resolve_checks(requested: Sequence[str]) -> List[str]:
        """Expand 'all' and reject unknown names, keeping the configured order."""
        names = list(requested)
        if 'all' in names:
            return list(app_config.AVAILABLE_CHECKS)
        unknown = [name for name in names if name not in app_config.AVAILABLE_CHECKS]
        if unknown:
            raise ValueError(f"unknown check(s): {', '.join(unknown)}")
        return [name for name in app_config.AVAILABLE_CHECKS if name in names]

    def generate(self, model_name: str, n: int, w_max: int) -> List[MatrixPolynomial]:
        """Q_0 … Q_{w_max} of a model."""
        model = self._model(model_name, n, w_max)
        return build_Q(model.make_presequence(n), w_max)

    def moments(self, model_name: str, n: int, order: int, nodes: Optional[int] = None) -> Dict[str, List[np.ndarray]]:
        """Moments ∫x^k W and ∫x^k W' for k ≤ order."""
        if order < 0:
            raise ValueError("moment order must be nonnegative")
        model = self._model(model_name, n, 0)
        rule = gauss_legendre_rule(model.default_nodes(n, 0, order) if nodes is None else nodes, *model.support)
        weights = {'W': model.make_presequence(n).weight, 'Wprime': model.conjugated_weight(n)}
        return {label: [moment(weight, k, rule) for k in range(order + 1)] for label, weight in weights.items()}

    def verify(
        self,
        model_name: str,
        n: int,
        w_max: int,
        checks: Sequence[str] = ('all',),
        nodes: Optional[int] = None,
        tol: Optional[float] = None,
        gram_tol: Optional[float] = None,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> Report:
        """
        Run the selected checks.

        Raises:
            UnknownModelError: for an unregistered model
            ValueError: for unknown checks or invalid parameters
        """
        names = self.resolve_checks(checks)
        model = self._model(model_name, n, w_max)
        presequence = model.make_presequence(n)
        node_count = model.default_nodes(n, w_max) if nodes is None else nodes
        count = app_config.SAMPLE_COUNT if samples is None else samples
        if count < 3:
            raise ValueError(f"at least three sample points are needed, got {count}")
        context = RunContext(
            model=model,
            n=n,
            w_max=w_max,
            presequence=presequence,
            qs=build_Q(presequence, w_max),
            rule=gauss_legendre_rule(node_count, *model.support),
            sample_xs=sample_points(count, model.support, seed),
            operator_xs=sample_points(count, model.support, seed, window=model.operator_window),
            tol=app_config.RESIDUAL_TOLERANCE if tol is None else tol,
            gram_tol=app_config.GRAM_TOLERANCE if gram_tol is None else gram_tol,
            seed=seed,
        )
        report = Report(
            model=model.name,
            params={
                'n': n,
                'w_max': w_max,
                'nodes': node_count,
                'samples': count,
                'tol': context.tol,
                'gram_tol': context.gram_tol,
                'checks': names,
            },
        )

        for name in names:
            try:
                result = self._checks[name](context)
            except MopkitError as error:
                logger.error("check %s raised %s: %s", name, type(error).__name__, error)
                result = CheckResult(name, FAIL, details={'error': f"{type(error).__name__}: {error}"})
            logger.info("check %s: %s (residual %s)", name, result.status, result.max_residual)
            report.checks.append(result)

        report.notes = model.discrepancy_notes(n, w_max, names) + context.notes
        return report

    def _model(self, model_name: str, n: int, w_max: int) -> Model:
        model = get_model(model_name)
        model.validate(n)
        if w_max < 0:
            raise ValueError(f"w_max must be nonnegative, got {w_max}")
        return model

    # =============================================================================
    # Checks
    # =============================================================================

    def _check_gram(self, ctx: RunContext) -> CheckResult:
        q_level = gram_matrix(ctx.qs, ctx.model.conjugated_weight(ctx.n), ctx.rule)
        f_level = f_level_gram(ctx.presequence, ctx.w_max, ctx.rule)
        q_ratio = q_level.max_offdiagonal_ratio()
        f_ratio = f_level.max_offdiagonal_ratio()
        return CheckResult.from_residual(
            'gram', max(q_ratio, f_ratio), ctx.gram_tol, q_level=q_ratio, f_level=f_ratio,
        )

    def _check_factorization(self, ctx: RunContext) -> CheckResult:
        report = verify_factorization(ctx.presequence, ctx.qs, ctx.sample_xs, ctx.tol)
        degrees = [q.degree for q in ctx.qs]
        nonsingular = [leading_coefficient(q).nonsingular for q in ctx.qs]
        result = CheckResult.from_residual(
            'factorization', report.max_residual, ctx.tol,
            residuals=report.residuals, degrees=degrees, nonsingular_leading=nonsingular,
        )
        if degrees != list(range(ctx.w_max + 1)) or not all(nonsingular):
            result.status = FAIL
        return result

    def _check_recursion(self, ctx: RunContext) -> CheckResult:
        if ctx.presequence.functions is None:
            return CheckResult.skipped('recursion', 'model has no closed form for F_n')
        report = check_recursion(ctx.presequence, ctx.w_max, ctx.sample_xs, ctx.tol)
        return CheckResult.from_residual(
            'recursion', report.max_residual, ctx.tol,
            residuals=report.residuals, offending={str(k): v for k, v in report.offending.items()},
        )

    def _check_eigen(self, ctx: RunContext) -> CheckResult:
        operator = ctx.model.q_operator(ctx.n)
        if operator is None:
            return CheckResult.skipped('eigen', 'model has no eigen-operator')
        lambdas = [ctx.model.eigenvalue_matrix(ctx.n, w) for w in range(ctx.w_max + 1)]
        q_side = check_eigenfunction(operator, ctx.qs, lambdas, ctx.sample_xs, ctx.tol)
        details = {'q_residuals': q_side.residuals}
        passed = q_side.passed

        sampled = ctx.model.f_operator(ctx.n)
        if sampled is not None:
            f_tol = ctx.tol * app_config.SAMPLED_TOLERANCE_FACTOR
            functions = [ctx.model.f_function(ctx.n, w) for w in range(ctx.w_max + 1)]
            f_side = check_eigenfunction_sampled(sampled, functions, lambdas, ctx.operator_xs, f_tol)
            details.update(f_residuals=f_side.residuals, f_tolerance=f_tol)
            passed = passed and f_side.passed

        result = CheckResult.from_residual('eigen', q_side.max_residual, ctx.tol, **details)
        if not passed:
            result.status = FAIL
        return result

    def _check_constants(self, ctx: RunContext) -> CheckResult:
        expected = ctx.model.expected_constants(ctx.n)
        inputs = ctx.model.extraction_inputs(ctx.n)
        if expected is None or inputs is None:
            return CheckResult.skipped('constants', 'model has no conjugated hypergeometric operator')
        psi, a1, a0 = inputs
        extracted = extract_hyper_constants(psi, a1, a0, ctx.operator_xs, ctx.tol)
        differences = {
            name: float(np.max(np.abs(getattr(extracted, name) - getattr(expected, name))))
            for name in ('C', 'U', 'V')
        }
        residual = max(list(differences.values()) + [extracted.affine_residual, extracted.constant_residual])
        return CheckResult.from_residual(
            'constants', residual, ctx.tol,
            C=extracted.C, U=extracted.U, V=extracted.V,
            entry_differences=differences,
            affine_residual=extracted.affine_residual,
            constant_residual=extracted.constant_residual,
        )

    def _check_commutant(self, ctx: RunContext) -> CheckResult:
        weight = ctx.model.conjugated_weight(ctx.n)
        count = max(len(ctx.sample_xs), minimum_samples(weight.size) + 4)
        xs = sample_points(count, ctx.model.support, ctx.seed)
        irreducible, commutant = is_irreducible(weight, xs)
        result = CheckResult.from_residual(
            'commutant', commutant.max_defect, ctx.tol,
            dimension=commutant.dimension,
            basis=commutant.basis,
            contains_identity=commutant.contains_identity,
            irreducible=irreducible,
        )
        if not irreducible:
            result.status = FAIL
        return result

    def _check_hyper_rows(self, ctx: RunContext) -> CheckResult:
        if ctx.model.row_equations(ctx.n, 0) is None:
            return CheckResult.skipped('hyper-rows', 'model has no row equations')
        row_residuals, ode_residuals = [], []
        for w, q in enumerate(ctx.qs):
            at_origin = q(0.0)
            for j, (ut, vshift, ct) in enumerate(ctx.model.row_equations(ctx.n, w)):
                series = matrix_2h1_coefficients(ut, vshift, ct, at_origin[j])
                row_residuals.append(max(
                    relative_residual(series.value(x), q(x)[j], scale=series.magnitude(x)) for x in ctx.sample_xs
                ))
                ode_residuals.append(max(ode_residual(ut, vshift, ct, series, x) for x in ctx.sample_xs))
            self._note_initial_vectors(ctx, w, at_origin)
        residual = max(row_residuals + ode_residuals)
        return CheckResult.from_residual(
            'hyper-rows', residual, ctx.tol,
            row_residual=max(row_residuals), ode_residual=max(ode_residuals),
        )

    def _note_initial_vectors(self, ctx: RunContext, w: int, at_origin: np.ndarray) -> None:
        printed = ctx.model.printed_initial_vectors(ctx.n, w)
        if printed is None:
            return
        for j in range(at_origin.shape[0]):
            if not np.allclose(printed[j], at_origin[j], rtol=1e-9, atol=1e-12):
                ctx.notes.append(
                    f"Q_{{{j + 1},{w}}}(0): published {_format_vector(printed[j])}, "
                    f"computed {_format_vector(at_origin[j])}"
                )

    def _check_leading(self, ctx: RunContext) -> CheckResult:
        if ctx.model.expected_leading(ctx.n, 0) is None:
            return CheckResult.skipped('leading', 'model has no closed-form leading coefficients')
        worst, f_degrees, nonsingular = 0.0, [], True
        for w, q in enumerate(ctx.qs):
            expected_f, expected_q = ctx.model.expected_leading(ctx.n, w)
            f_lead = leading_coefficient(ctx.model.f_polynomial(ctx.n, w))
            q_lead = leading_coefficient(q)
            f_degrees.append(f_lead.degree)
            worst = max(
                worst,
                relative_residual(f_lead.matrix, expected_f),
                relative_residual(q_lead.matrix, expected_q),
            )
            nonsingular = nonsingular and q_lead.nonsingular
        result = CheckResult.from_residual('leading', worst, ctx.tol, f_degrees=f_degrees, nonsingular=nonsingular)
        if not nonsingular:
            result.status = FAIL
        return result

    def _check_monic(self, ctx: RunContext) -> CheckResult:
        monic_tol = ctx.tol * app_config.SAMPLED_TOLERANCE_FACTOR
        oracle = recursion_from_moments(ctx.model.conjugated_weight(ctx.n), ctx.w_max, ctx.rule)
        monic, _ = monic_normalize(ctx.qs)
        residuals = []
        for built, reference in zip(monic, oracle.polynomials):
            expected = [reference(x) for x in ctx.sample_xs]
            actual = [built(x) for x in ctx.sample_xs]
            scale = max(np.linalg.norm(value) for value in expected)
            residuals.append(max(relative_residual(a, e, scale=scale) for a, e in zip(actual, expected)))
        return CheckResult.from_residual('monic', max(residuals), monic_tol, residuals=residuals)


def _format_vector(vector: np.ndarray) -> str:
    return '(' + ', '.join(f"{value.real:.17g}" for value in vector) + ')'


# Create the global instance that other parts of the package use
verification_service = VerificationService()
