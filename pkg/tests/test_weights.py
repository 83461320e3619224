"""
Tests for Weights Module (src/numerics/weights.py)
"""

import numpy as np
import pytest

from src.models.cp2 import F_w, Cp2Params, matrix_weight_W, matrix_weight_Wprime
from src.numerics.exceptions import SingularMatrixError
from src.numerics.quadrature import gauss_legendre_rule, rule_for_degree
from src.numerics.weights import (
    MatrixWeight,
    conjugate_weight,
    constant_weight,
    diagonal_weight,
    equivalence_transform,
    moment,
    psd_report,
)
from tests.conftest import CP2_N_VALUES


class TestMoments:
    """∫ x^k W(x) dx."""

    def test_cp2_zeroth_moment(self):
        """For n = 1, ∫ W = diag(1/12, 1/6)."""
        rule = rule_for_degree(3, 0.0, 1.0)
        np.testing.assert_allclose(moment(matrix_weight_W(1), 0, rule), np.diag([1 / 12, 1 / 6]), atol=1e-15)

    def test_diagonal_weight_moments(self):
        """∫_0^1 x^k diag(1, x) = diag(1/(k+1), 1/(k+2))."""
        weight = diagonal_weight([lambda x: 1.0, lambda x: x], (0.0, 1.0), polynomial_degree=1)
        rule = gauss_legendre_rule(4, 0.0, 1.0)
        for k in range(4):
            np.testing.assert_allclose(moment(weight, k, rule), np.diag([1 / (k + 1), 1 / (k + 2)]), rtol=1e-14)

    def test_negative_order(self):
        """Moment orders start at zero."""
        with pytest.raises(ValueError):
            moment(constant_weight(np.eye(2), (0.0, 1.0)), -1, gauss_legendre_rule(2, 0.0, 1.0))


class TestPositivity:
    """Positive-semidefiniteness reports."""

    @pytest.mark.parametrize("n", CP2_N_VALUES)
    def test_cp2_weights_are_positive_definite(self, n, unit_samples):
        """W and W' are Hermitian positive definite in the interior."""
        for weight in (matrix_weight_W(n), matrix_weight_Wprime(n)):
            assert weight.is_hermitian(unit_samples)
            report = psd_report(weight, unit_samples)
            assert report.passed
            assert report.positive_definite

    def test_indefinite_weight_is_flagged(self):
        """diag(1, −1) fails at every sample."""
        report = psd_report(constant_weight(np.diag([1.0, -1.0]), (0.0, 1.0)), [0.2, 0.5])
        assert not report.passed
        assert report.flagged == [0, 1]
        assert report.min_eigenvalues[0] == pytest.approx(-1.0)

    def test_semidefinite_is_not_definite(self):
        """diag(1, 0) passes but is not positive definite."""
        report = psd_report(constant_weight(np.diag([1.0, 0.0]), (0.0, 1.0)), [0.3])
        assert report.passed
        assert not report.positive_definite

    def test_vanishing_weight_is_flagged(self):
        """A weight that is zero at a sample is degenerate there."""
        report = psd_report(constant_weight(np.zeros((2, 2)), (0.0, 1.0)), [0.4])
        assert report.flagged == [0]


class TestTransforms:
    """Conjugation by F_0 and constant equivalence."""

    @pytest.mark.parametrize("n", CP2_N_VALUES)
    def test_conjugated_cp2_weight_matches_closed_form(self, n, unit_samples):
        """F_0·W·F_0* equals the closed form of W'."""
        f0 = lambda x: F_w(Cp2Params(n, 0), x)
        conjugated = conjugate_weight(matrix_weight_W(n), f0, f0_degree=1)
        closed = matrix_weight_Wprime(n)
        assert conjugated.polynomial_degree == n + 4
        for x in unit_samples:
            np.testing.assert_allclose(conjugated(x), closed(x), rtol=1e-12, atol=1e-15)

    def test_equivalence_transform(self):
        """M·W·M* with a constant M."""
        weight = constant_weight(np.eye(2), (0.0, 1.0))
        m = np.array([[1.0, 2.0], [0.0, 1.0]])
        equivalent = equivalence_transform(weight, m)
        np.testing.assert_allclose(equivalent(0.5), m @ m.T)
        assert equivalent.polynomial_degree == 0

    def test_equivalence_needs_nonsingular_matrix(self):
        """A singular M is refused."""
        weight = constant_weight(np.eye(2), (0.0, 1.0))
        with pytest.raises(SingularMatrixError):
            equivalence_transform(weight, np.ones((2, 2)))

    def test_weight_size_is_enforced(self):
        """Evaluations of the wrong size raise."""
        weight = MatrixWeight(2, (0.0, 1.0), lambda x: np.eye(3))
        with pytest.raises(ValueError):
            weight(0.5)
