"""
Tests for Commutant Module (src/numerics/commutant.py)
"""

import numpy as np
import pytest

from src.models.cp2 import matrix_weight_W, matrix_weight_Wprime
from src.numerics.commutant import (
    commutation_defect,
    commuting_space,
    is_irreducible,
    minimum_samples,
)
from src.numerics.exceptions import InsufficientSamplesError
from src.numerics.weights import MatrixWeight, diagonal_weight, equivalence_transform
from src.utils.helpers import sample_points
from tests.conftest import CP2_N_VALUES


class TestCommutingSpace:
    """Real dimension of {T : T·W = W·T*}."""

    @pytest.mark.parametrize("n", CP2_N_VALUES)
    def test_cp2_conjugated_weight_is_irreducible(self, n):
        """W' has commuting space ℝ·I."""
        result = is_irreducible(matrix_weight_Wprime(n))
        assert result.irreducible
        assert result.commutant.dimension == 1
        assert result.commutant.contains_identity
        basis_element = result.commutant.basis[0]
        np.testing.assert_allclose(basis_element, basis_element[0, 0] * np.eye(2), atol=1e-9)

    def test_cp2_diagonal_weight_is_reducible(self):
        """The diagonal W commutes with every real diagonal T."""
        result = is_irreducible(matrix_weight_W(1))
        assert not result.irreducible
        assert result.commutant.dimension == 2
        assert result.commutant.contains_identity

    def test_scalar_multiple_of_identity(self):
        """w(x)·I commutes with every Hermitian T: real dimension N²."""
        weight = diagonal_weight([lambda x: x, lambda x: x], (0.0, 1.0))
        assert commuting_space(weight).dimension == 4

    def test_distinct_diagonal(self):
        """diag(x, x²) has commuting space the real diagonal matrices."""
        weight = diagonal_weight([lambda x: x, lambda x: x * x], (0.0, 1.0))
        commutant = commuting_space(weight)
        assert commutant.dimension == 2
        for t in commutant.basis:
            np.testing.assert_allclose(t, np.diag(np.diag(t)), atol=1e-9)
            np.testing.assert_allclose(t.imag, 0.0, atol=1e-9)

    def test_basis_commutes(self, unit_samples):
        """Each basis element satisfies T·W = W·T* at fresh samples."""
        weight = matrix_weight_W(2)
        commutant = commuting_space(weight)
        assert commutant.max_defect < 1e-9
        for t in commutant.basis:
            for x in unit_samples:
                value = weight(float(x))
                assert np.linalg.norm(commutation_defect(t, value)) <= 1e-9 * np.linalg.norm(value)

    def test_equivalent_weight_keeps_dimension(self):
        """M·W·M* has a commuting space of the same dimension as W."""
        m = np.array([[1.0, 1.0], [0.0, 2.0]])
        weight = equivalence_transform(matrix_weight_W(1), m)
        assert commuting_space(weight).dimension == 2


class TestSampling:
    """Sample requirements."""

    def test_minimum_samples(self):
        """2N² + 1 samples."""
        assert minimum_samples(2) == 9
        assert minimum_samples(3) == 19

    def test_too_few_samples(self):
        """Fewer distinct samples than needed are refused."""
        xs = sample_points(5, (0.0, 1.0), seed=1)
        with pytest.raises(InsufficientSamplesError):
            commuting_space(matrix_weight_Wprime(1), xs)

    def test_repeated_samples_do_not_count(self):
        """Duplicates are removed before counting."""
        xs = [0.5] * 20
        with pytest.raises(InsufficientSamplesError):
            commuting_space(matrix_weight_Wprime(1), xs)

    def test_samples_on_the_boundary(self):
        """Samples must be interior."""
        xs = list(sample_points(12, (0.0, 1.0), seed=1)) + [1.0]
        with pytest.raises(ValueError):
            commuting_space(matrix_weight_Wprime(1), xs)

    def test_explicit_samples(self):
        """Caller-supplied samples give the same answer as the default ones."""
        xs = sample_points(13, (0.0, 1.0), seed=4)
        assert commuting_space(matrix_weight_Wprime(0), xs).dimension == 1

    def test_weight_vanishing_at_a_sample(self):
        """A sample where W = 0 contributes no constraint."""
        weight = MatrixWeight(2, (0.0, 2.0), lambda x: (x - 1.0) * np.diag([1.0, x]))
        xs = list(sample_points(12, (0.0, 2.0), seed=5)) + [1.0]
        assert commuting_space(weight, xs).dimension == 2
