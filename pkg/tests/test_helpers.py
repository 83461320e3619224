"""
Tests for Helper Functions Module (src/utils/helpers.py)
"""

import logging

import numpy as np
import pytest

from src.numerics.exceptions import SizeMismatchError
from src.utils.helpers import (
    as_square_matrix,
    check_same_size,
    configure_logging,
    format_error_message,
    hermitian_defect,
    is_numerically_singular,
    relative_residual,
    sample_points,
    singular_value_ratio,
)


class TestFormatErrorMessage:
    """User-facing error messages."""

    def test_known_error_type(self):
        """Known keys map to their base message."""
        message = format_error_message('singular_matrix')
        assert 'singular' in message
        assert 'Details' not in message

    def test_details_are_appended(self):
        """Details go on their own line."""
        message = format_error_message('unknown_model', 'no model named foo')
        assert message.startswith('Unknown model. Registered models: cp2, legendre.')
        assert message.endswith('\nDetails: no model named foo')

    def test_unknown_error_type_falls_back(self):
        """Unrecognised keys use the generic message."""
        assert format_error_message('nonexistent') == "An unexpected error occurred."


class TestMatrixHelpers:
    """Square-matrix validation and singularity tests."""

    def test_as_square_matrix_converts_to_complex(self):
        """Nested lists become complex arrays."""
        matrix = as_square_matrix([[1, 2], [3, 4]])
        assert matrix.dtype == complex
        assert matrix.shape == (2, 2)

    def test_as_square_matrix_rejects_rectangular(self):
        """A 2×3 array is not a square matrix."""
        with pytest.raises(SizeMismatchError):
            as_square_matrix(np.zeros((2, 3)))

    def test_as_square_matrix_rejects_wrong_size(self):
        """An explicit size must match."""
        with pytest.raises(SizeMismatchError):
            as_square_matrix(np.eye(3), size=2)

    def test_as_square_matrix_rejects_nan(self):
        """Non-finite entries are refused."""
        with pytest.raises(ValueError):
            as_square_matrix([[np.nan, 0], [0, 1]])

    def test_size_mismatch_is_a_value_error(self):
        """SizeMismatchError can be caught as ValueError."""
        assert issubclass(SizeMismatchError, ValueError)

    def test_singular_value_ratio(self):
        """Ratio of extreme singular values."""
        assert singular_value_ratio(np.diag([4.0, 1.0])) == pytest.approx(0.25)
        assert singular_value_ratio(np.zeros((2, 2))) == 0.0

    def test_is_numerically_singular(self):
        """Nearly rank-deficient matrices count as singular."""
        assert is_numerically_singular(np.array([[1.0, 1.0], [1.0, 1.0 + 1e-13]]))
        assert not is_numerically_singular(np.eye(2))

    def test_check_same_size(self):
        """All sizes equal returns the size."""
        assert check_same_size([2, 2, 2]) == 2
        with pytest.raises(SizeMismatchError):
            check_same_size([2, 3])


class TestResiduals:
    """Relative residual arithmetic."""

    def test_relative_to_expected(self):
        """Scale defaults to ‖expected‖."""
        assert relative_residual(np.array([1.1, 0.0]), np.array([1.0, 0.0])) == pytest.approx(0.1)

    def test_absolute_when_scale_is_zero(self):
        """A zero reference gives the absolute residual."""
        assert relative_residual(np.array([3.0, 4.0]), np.zeros(2)) == pytest.approx(5.0)

    def test_explicit_scale(self):
        """An explicit scale overrides ‖expected‖."""
        assert relative_residual(np.array([2.0]), np.array([1.0]), scale=10.0) == pytest.approx(0.1)

    def test_hermitian_defect(self):
        """Hermitian matrices have zero defect, others do not."""
        assert hermitian_defect(np.array([[1.0, 1j], [-1j, 2.0]])) == 0.0
        assert hermitian_defect(np.array([[0.0, 1.0], [0.0, 0.0]])) > 0.5


class TestSamplePoints:
    """Random interior samples."""

    def test_points_are_sorted_and_interior(self):
        """Samples lie in the default window and are ascending."""
        points = sample_points(50, (-1.0, 1.0), seed=3)
        assert np.all(np.diff(points) > 0)
        assert points.min() >= -1.0 + 2 * 0.02
        assert points.max() <= 1.0 - 2 * 0.02

    def test_window(self):
        """A window restricts the fractions of the interval."""
        points = sample_points(30, (0.0, 1.0), seed=3, window=(0.05, 0.95))
        assert points.min() >= 0.05 and points.max() <= 0.95

    def test_seed_is_deterministic(self):
        """Same seed, same points."""
        np.testing.assert_array_equal(sample_points(5, (0, 1), seed=9), sample_points(5, (0, 1), seed=9))


class TestConfigureLogging:
    """Logging goes to stderr at the requested level."""

    def test_level_is_applied(self):
        """The root logger picks up the level name."""
        configure_logging('debug')
        assert logging.getLogger().level == logging.DEBUG
        configure_logging('WARNING')
        assert logging.getLogger().level == logging.WARNING

    def test_unknown_level_falls_back_to_warning(self):
        """Unrecognised names use WARNING."""
        configure_logging('chatty')
        assert logging.getLogger().level == logging.WARNING
