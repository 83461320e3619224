"""
Tests for Matrix Polynomial Module (src/numerics/matpoly.py)

Algebraic identities are checked by evaluation at sample points.
"""

import numpy as np
import pytest
from numpy.polynomial import Polynomial

from src.numerics.exceptions import SizeMismatchError
from src.numerics.matpoly import (
    MatrixPolynomial,
    leading_coefficient,
    poly_mul_scalar_poly,
)
from tests.conftest import random_polynomial


class TestConstruction:
    """Building and trimming matrix polynomials."""

    def test_trailing_zero_coefficients_are_trimmed(self):
        """Stored degree ignores zero high-order coefficients."""
        coeffs = np.zeros((4, 2, 2))
        coeffs[0] = np.eye(2)
        coeffs[1] = [[1, 0], [0, 2]]
        p = MatrixPolynomial(coeffs)
        assert p.degree == 1
        assert p.size == 2

    def test_zero_polynomial(self):
        """The zero polynomial keeps one zero coefficient."""
        z = MatrixPolynomial.zero(3)
        assert z.is_zero
        assert z.degree == 0
        assert z.coeffs.shape == (1, 3, 3)

    def test_coefficients_are_read_only(self):
        """Values are immutable."""
        p = MatrixPolynomial.identity(2)
        with pytest.raises(ValueError):
            p.coeffs[0, 0, 0] = 5.0

    def test_rejects_non_square(self):
        """Coefficient matrices must be square."""
        with pytest.raises(SizeMismatchError):
            MatrixPolynomial(np.zeros((2, 2, 3)))

    def test_from_entries(self):
        """Entry-wise scalar polynomials assemble into one matrix polynomial."""
        p = MatrixPolynomial.from_entries([
            [Polynomial([1, -2]), [0]],
            [[3], Polynomial([0, 0, 1])],
        ])
        assert p.degree == 2
        np.testing.assert_allclose(p(0.5), [[0.0, 0.0], [3.0, 0.25]])


class TestArithmetic:
    """Ring operations agree with pointwise matrix arithmetic."""

    def test_add_and_subtract(self, rng, unit_samples):
        """(P ± Q)(x) = P(x) ± Q(x)."""
        p = random_polynomial(rng, 3, 4)
        q = random_polynomial(rng, 3, 2)
        np.testing.assert_allclose((p + q)(unit_samples), p(unit_samples) + q(unit_samples))
        np.testing.assert_allclose((p - q)(unit_samples), p(unit_samples) - q(unit_samples))

    def test_cancellation_lowers_degree(self, rng):
        """P − P is the zero polynomial."""
        p = random_polynomial(rng, 2, 3)
        assert (p - p).is_zero

    def test_product_is_not_commutative(self, rng, unit_samples):
        """(PQ)(x) = P(x)Q(x), and PQ differs from QP in general."""
        p = random_polynomial(rng, 2, 3)
        q = random_polynomial(rng, 2, 2)
        product = p @ q
        assert product.degree == 5
        np.testing.assert_allclose(product(unit_samples), p(unit_samples) @ q(unit_samples), rtol=1e-12)
        assert not np.allclose((q @ p).coeffs, product.coeffs)

    def test_constant_multiplication_on_both_sides(self, rng, unit_samples):
        """M·P and P·M with a constant matrix."""
        p = random_polynomial(rng, 2, 3)
        m = rng.standard_normal((2, 2))
        np.testing.assert_allclose((m @ p)(unit_samples), m @ p(unit_samples), rtol=1e-12)
        np.testing.assert_allclose((p @ m)(unit_samples), p(unit_samples) @ m, rtol=1e-12)

    def test_scalar_multiplication(self, rng):
        """Scalars multiply every coefficient."""
        p = random_polynomial(rng, 2, 2)
        np.testing.assert_allclose((2.5 * p).coeffs, 2.5 * p.coeffs)
        np.testing.assert_allclose((-p).coeffs, -p.coeffs)

    def test_scalar_polynomial_multiplication(self, rng, unit_samples):
        """s(x)·P(x) for a scalar polynomial s."""
        p = random_polynomial(rng, 2, 2)
        s = Polynomial([1.0, -1.0, 0.5])
        expected = s(unit_samples)[:, None, None] * p(unit_samples)
        np.testing.assert_allclose(poly_mul_scalar_poly(p, s)(unit_samples), expected, rtol=1e-12)

    @pytest.mark.parametrize("p_degree,q_degree", [(0, 3), (2, 2), (4, 1), (5, 6)])
    def test_product_degree_adds(self, rng, p_degree, q_degree):
        """deg PQ = deg P + deg Q when the leading coefficients are nonsingular."""
        p = random_polynomial(rng, 3, p_degree)
        q = random_polynomial(rng, 3, q_degree)
        assert p.leading_coefficient().nonsingular and q.leading_coefficient().nonsingular
        product = p @ q
        assert product.degree == p_degree + q_degree
        np.testing.assert_allclose(product.coeffs[-1], p.coeffs[-1] @ q.coeffs[-1], rtol=1e-12)

    def test_product_degree_drops_for_nilpotent_leading_terms(self):
        """Leading coefficients whose product vanishes lower the degree."""
        nilpotent = np.array([[0.0, 1.0], [0.0, 0.0]])
        p = MatrixPolynomial(np.array([np.eye(2), nilpotent]))
        assert (p @ p).degree == 1

    def test_size_mismatch(self):
        """Adding a 2×2 and a 3×3 polynomial fails."""
        with pytest.raises(SizeMismatchError):
            MatrixPolynomial.identity(2) + MatrixPolynomial.identity(3)


class TestCalculusAndSubstitution:
    """Derivatives, affine substitution and adjoints."""

    def test_derivative(self):
        """d/dx of x³·M is 3x²·M; second derivative 6x·M."""
        coeffs = np.zeros((4, 2, 2))
        coeffs[3] = [[1, 2], [3, 4]]
        p = MatrixPolynomial(coeffs)
        np.testing.assert_allclose(p.derivative()(2.0), 12.0 * coeffs[3])
        np.testing.assert_allclose(p.derivative(2)(2.0), 12.0 * coeffs[3])
        assert p.derivative(4).is_zero

    def test_derivative_matches_central_differences(self, rng, unit_samples):
        """P′(x) agrees with (P(x + h) − P(x − h))/2h for h = 1e-5."""
        p = random_polynomial(rng, 2, 5)
        h = 1e-5
        differences = (p(unit_samples + h) - p(unit_samples - h)) / (2 * h)
        np.testing.assert_allclose(p.derivative()(unit_samples), differences, rtol=1e-7, atol=1e-7)

    def test_derivative_order_must_be_nonnegative(self):
        """Negative orders are rejected."""
        with pytest.raises(ValueError):
            MatrixPolynomial.identity(2).derivative(-1)

    def test_compose_affine(self, rng, unit_samples):
        """P(σx+τ) evaluated directly."""
        p = random_polynomial(rng, 2, 5)
        composed = p.compose_affine(-1.0, 1.0)
        np.testing.assert_allclose(composed(unit_samples), p(1.0 - unit_samples), rtol=1e-11)
        composed = p.compose_affine(2.0, -1.0)
        np.testing.assert_allclose(composed(unit_samples), p(2.0 * unit_samples - 1.0), rtol=1e-11)

    def test_adjoint(self, rng, unit_samples):
        """P*(x) = P(x)* on the real line."""
        p = random_polynomial(rng, 3, 3)
        values = p(unit_samples)
        np.testing.assert_allclose(p.adjoint()(unit_samples), np.conj(np.transpose(values, (0, 2, 1))))


class TestLeadingCoefficient:
    """Degree and leading coefficient."""

    def test_nonsingular_leading_coefficient(self):
        """x·I + M has leading coefficient I."""
        coeffs = np.array([[[1.0, 2.0], [3.0, 4.0]], np.eye(2)])
        lc = leading_coefficient(MatrixPolynomial(coeffs))
        assert lc.degree == 1
        np.testing.assert_allclose(lc.matrix, np.eye(2))
        assert lc.nonsingular

    def test_singular_leading_coefficient(self):
        """A rank-one leading coefficient is flagged singular."""
        coeffs = np.array([np.eye(2), [[1.0, 1.0], [1.0, 1.0]]])
        assert not MatrixPolynomial(coeffs).leading_coefficient().nonsingular

    def test_zero_polynomial_has_none(self):
        """The zero polynomial raises."""
        with pytest.raises(ValueError):
            leading_coefficient(MatrixPolynomial.zero(2))
