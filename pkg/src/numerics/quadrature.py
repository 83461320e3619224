"""
Quadrature Module

Gauss–Legendre rules on [a, b], matrix-valued integration and the matrix
inner product (P, Q) = ∫ P(x) W(x) Q(x)* dx.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from src.config.settings import app_config
from src.numerics.exceptions import SizeMismatchError
from src.numerics.matpoly import MatrixPolynomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """m-point rule with nodes strictly inside (a, b), exact to degree 2m−1."""

    nodes: np.ndarray
    weights: np.ndarray
    interval: Tuple[float, float]

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        a, b = self.interval
        if nodes.ndim != 1 or nodes.shape != weights.shape or nodes.size == 0:
            raise ValueError("nodes and weights must be non-empty 1-D arrays of equal length")
        if np.any(weights <= 0.0):
            raise ValueError("quadrature weights must be positive")
        if np.any(nodes <= a) or np.any(nodes >= b) or np.any(np.diff(nodes) <= 0.0):
            raise ValueError("nodes must be strictly interior and strictly increasing")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, 'nodes', nodes)
        object.__setattr__(self, 'weights', weights)

    @property
    def size(self) -> int:
        return self.nodes.size

    @property
    def exactness_degree(self) -> int:
        return 2 * self.size - 1


def _legendre_with_derivative(m: int, t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    previous = np.ones_like(t)
    current = t.copy()
    for k in range(2, m + 1):
        previous, current = current, ((2 * k - 1) * t * current - (k - 1) * previous) / k
    derivative = m * (t * current - previous) / (t * t - 1.0)
    return current, derivative


def gauss_legendre_rule(m: int, a: float, b: float) -> QuadratureRule:
    """
    Gauss–Legendre rule with m nodes on [a, b].

    Nodes are the roots of P_m found by Newton iteration from the
    cos(π(4k−1)/(4m+2)) initial guesses.

    Raises:
        ValueError: if m < 1 or a >= b
    """
    if m < 1:
        raise ValueError("a quadrature rule needs at least one node")
    if not a < b:
        raise ValueError(f"empty interval [{a}, {b}]")

    k = np.arange(1, m + 1)
    t = np.cos(np.pi * (4 * k - 1) / (4 * m + 2))
    for iteration in range(app_config.NEWTON_MAX_ITERATIONS):
        value, derivative = _legendre_with_derivative(m, t)
        step = value / derivative
        t = t - step
        if np.max(np.abs(step)) < app_config.NEWTON_TOLERANCE:
            break
    else:
        logger.warning("Newton iteration for %d Legendre roots stopped after %d steps", m, iteration + 1)

    _, derivative = _legendre_with_derivative(m, t)
    w = 2.0 / ((1.0 - t * t) * derivative * derivative)

    order = np.argsort(t)
    half_length = 0.5 * (b - a)
    nodes = half_length * t[order] + 0.5 * (a + b)
    weights = half_length * w[order]
    return QuadratureRule(nodes, weights, (float(a), float(b)))


def rule_for_degree(degree: int, a: float, b: float) -> QuadratureRule:
    """Smallest Gauss–Legendre rule exact for polynomials of the given degree."""
    return gauss_legendre_rule(max(1, math.ceil((degree + 1) / 2)), a, b)


def integrate_matrix(f: Callable[[float], np.ndarray], rule: QuadratureRule) -> np.ndarray:
    """
    Σ weights[i]·f(nodes[i]), accumulated in ascending node order.

    Raises:
        SizeMismatchError: if f returns matrices of different shapes
    """
    total = None
    for node, weight in zip(rule.nodes, rule.weights):
        value = np.asarray(f(float(node)), dtype=complex)
        if total is None:
            total = np.zeros_like(value)
        elif value.shape != total.shape:
            raise SizeMismatchError(f"integrand shape changed from {total.shape} to {value.shape}")
        total = total + weight * value
    return total


def inner_product(p: MatrixPolynomial, q: MatrixPolynomial, weight, rule: QuadratureRule) -> np.ndarray:
    """
    (P, Q) = ∫ P(x) W(x) Q(x)* dx.

    The caller chooses a rule exact for deg P + deg Q + the polynomial degree of W.
    """
    if p.size != q.size or p.size != weight.size:
        raise SizeMismatchError(f"sizes differ: P {p.size}, Q {q.size}, W {weight.size}")

    def integrand(x: float) -> np.ndarray:
        return p(x) @ weight(x) @ np.conj(q(x)).T

    return integrate_matrix(integrand, rule)
