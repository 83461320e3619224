"""
Commutant Module

The commuting space of a weight, {T constant : T·W(x) = W(x)·T* for all x},
computed as a real-linear null space on sampled points. A weight is
irreducible exactly when this space is ℝ·I.
"""

import logging
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence

import numpy as np
import scipy.linalg

from src.numerics.exceptions import InsufficientSamplesError
from src.numerics.weights import MatrixWeight
from src.utils.helpers import sample_points

logger = logging.getLogger(__name__)

# Singular values below this fraction of the largest span the null space
NULL_SPACE_RCOND = 1e-10

# Allowed ‖TW − WT*‖ relative to ‖W‖·‖T‖ for a basis element
COMMUTATION_TOLERANCE = 1e-9


@dataclass
class CommutantBasis:
    """Real-linear basis of the commuting space."""

    dimension: int
    basis: List[np.ndarray]
    contains_identity: bool
    max_defect: float = 0.0


class Irreducibility(NamedTuple):
    irreducible: bool
    commutant: CommutantBasis


def _real_basis(size: int) -> List[np.ndarray]:
    """E_ij followed by i·E_ij: a basis of the N×N complex matrices over ℝ."""
    basis = []
    for scale in (1.0, 1.0j):
        for i in range(size):
            for j in range(size):
                element = np.zeros((size, size), dtype=complex)
                element[i, j] = scale
                basis.append(element)
    return basis


def _split(matrix: np.ndarray) -> np.ndarray:
    flat = matrix.reshape(-1)
    return np.concatenate([flat.real, flat.imag])


def commutation_defect(t: np.ndarray, weight_value: np.ndarray) -> np.ndarray:
    return t @ weight_value - weight_value @ np.conj(t).T


def minimum_samples(size: int) -> int:
    return 2 * size * size + 1


def commuting_space(weight: MatrixWeight, sample_xs: Optional[Sequence[float]] = None) -> CommutantBasis:
    """
    Null space of T ↦ (T·W(x_k) − W(x_k)·T*)_k over the 2N² real unknowns of T.

    Each sample's block is scaled by 1/‖W(x_k)‖. Basis elements are
    normalized so that their largest real coordinate is 1.

    Raises:
        InsufficientSamplesError: with fewer than 2N²+1 distinct samples
        ValueError: if a sample lies outside the open support
    """
    size = weight.size
    needed = minimum_samples(size)
    if sample_xs is None:
        sample_xs = sample_points(needed + 4, weight.support)
    xs = np.unique(np.asarray(sample_xs, dtype=float))
    if xs.size < needed:
        raise InsufficientSamplesError(f"commutant of a {size}x{size} weight needs {needed} distinct samples")
    a, b = weight.support
    if np.any(xs <= a) or np.any(xs >= b):
        raise ValueError("commutant samples must be interior points of the support")

    basis = _real_basis(size)
    blocks = []
    for x in xs:
        value = weight(float(x))
        norm = np.linalg.norm(value)
        scale = 1.0 / norm if norm > 0.0 else 1.0
        blocks.append(np.column_stack([_split(commutation_defect(t, value)) * scale for t in basis]))
    constraints = np.vstack(blocks)

    null = scipy.linalg.null_space(constraints, rcond=NULL_SPACE_RCOND)
    elements = []
    for vector in null.T:
        vector = vector / vector[np.argmax(np.abs(vector))]
        elements.append(sum(c * t for c, t in zip(vector, basis)))

    identity_coordinates = _split(np.eye(size, dtype=complex))
    if null.shape[1]:
        projection = null @ (null.T @ identity_coordinates)
        contains_identity = bool(np.linalg.norm(projection - identity_coordinates) <= 1e-8 * np.sqrt(size))
    else:
        contains_identity = False

    max_defect = 0.0
    for t in elements:
        for x in xs:
            value = weight(float(x))
            scale = np.linalg.norm(value) * np.linalg.norm(t)
            if scale > 0.0:
                max_defect = max(max_defect, np.linalg.norm(commutation_defect(t, value)) / scale)
    if max_defect > COMMUTATION_TOLERANCE:
        logger.warning("commutant basis of %s only commutes to %.3e", weight.name, max_defect)
    logger.debug("commutant of %s has dimension %d", weight.name, len(elements))
    return CommutantBasis(len(elements), elements, contains_identity, float(max_defect))


def is_irreducible(weight: MatrixWeight, sample_xs: Optional[Sequence[float]] = None) -> Irreducibility:
    """A weight is irreducible when its commuting space is one-dimensional."""
    commutant = commuting_space(weight, sample_xs)
    return Irreducibility(commutant.dimension == 1, commutant)
