"""
Pytest Configuration and Fixtures for mopkit

Shared fixtures: a seeded random generator, sample points, quadrature rules
and cached cp2 pre-sequences with their recursion-built Q_w.
"""

import sys
from functools import lru_cache
from pathlib import Path

import numpy as np
import pytest

# Add the project root to Python path for imports
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.models.cp2 import make_presequence  # noqa: E402
from src.numerics.matpoly import MatrixPolynomial  # noqa: E402
from src.numerics.presequence import build_Q  # noqa: E402
from src.utils.helpers import sample_points  # noqa: E402

# n values the cp2 properties are exercised for
CP2_N_VALUES = (0, 1, 2, 5)


@lru_cache(maxsize=None)
def cp2_sequence(n: int, w_max: int = 8):
    """(pre-sequence, [Q_0 … Q_w_max]) for cp2, cached across tests."""
    presequence = make_presequence(n)
    return presequence, build_Q(presequence, w_max)


def random_polynomial(rng: np.random.Generator, size: int, degree: int) -> MatrixPolynomial:
    shape = (degree + 1, size, size)
    return MatrixPolynomial(rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


@pytest.fixture
def rng():
    """Seeded generator so that random inputs are reproducible."""
    return np.random.default_rng(20240101)


@pytest.fixture
def unit_samples():
    """20 sorted interior points of (0, 1)."""
    return sample_points(20, (0.0, 1.0), seed=7)


@pytest.fixture
def operator_samples():
    """20 points of [0.05, 0.95], away from the 1/x pole of the cp2 operator."""
    return sample_points(20, (0.0, 1.0), seed=7, window=(0.05, 0.95))


@pytest.fixture
def symmetric_samples():
    """20 sorted interior points of (−1, 1)."""
    return sample_points(20, (-1.0, 1.0), seed=11)


@pytest.fixture
def cp2_n1():
    """cp2 with n = 1 and Q_0 … Q_8."""
    return cp2_sequence(1)
