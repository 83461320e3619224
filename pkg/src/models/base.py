"""
Model Base Class

A model bundles everything the verification service needs to know about one
concrete pre-sequence: how to build it for a parameter n, which operators
have its members as eigenfunctions, and which closed forms are known.
Capabilities a model does not have return None; the checks that depend on
them are then reported as skipped.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.config.settings import app_config
from src.numerics.diffop import HypergeometricConstants, MatrixFunction, RightDiffOperator, SampledRightOperator
from src.numerics.matpoly import MatrixPolynomial
from src.numerics.presequence import PreSequence
from src.numerics.weights import MatrixWeight

# (U^t, V^t + λ, C^t) of one row equation
RowEquation = Tuple[np.ndarray, np.ndarray, np.ndarray]


class Model:
    """Interface shared by every registered model."""

    name: str = 'model'
    size: int = 1
    support: Tuple[float, float] = (0.0, 1.0)

    # Fractional window of the support where F-side operators are sampled
    operator_window: Tuple[float, float] = (0.02, 0.98)

    def validate(self, n: int) -> None:
        if n < 0:
            raise ValueError(f"{self.name} needs n >= 0, got {n}")

    def make_presequence(self, n: int) -> PreSequence:
        raise NotImplementedError

    def conjugated_weight(self, n: int) -> MatrixWeight:
        return self.make_presequence(n).conjugated_weight()

    def default_nodes(self, n: int, w_max: int, order: int = 0) -> int:
        return max(w_max, order) + n + app_config.NODE_MARGIN

    def q_operator(self, n: int) -> Optional[RightDiffOperator]:
        return None

    def f_operator(self, n: int) -> Optional[SampledRightOperator]:
        return None

    def f_function(self, n: int, w: int) -> Optional[MatrixFunction]:
        return None

    def eigenvalue_matrix(self, n: int, w: int) -> Optional[np.ndarray]:
        return None

    def expected_constants(self, n: int) -> Optional[HypergeometricConstants]:
        return None

    def extraction_inputs(self, n: int):
        """(Ψ, A_1, A_0) for constant extraction, or None."""
        return None

    def expected_leading(self, n: int, w: int) -> Optional[Tuple[np.ndarray, np.ndarray]]:
        """(LC(F_w), LC(Q_w)) from closed forms, or None."""
        return None

    def f_polynomial(self, n: int, w: int) -> Optional[MatrixPolynomial]:
        return None

    def row_equations(self, n: int, w: int) -> Optional[List[RowEquation]]:
        return None

    def printed_initial_vectors(self, n: int, w: int) -> Optional[np.ndarray]:
        return None

    def discrepancy_notes(self, n: int, w_max: int, checks: Sequence[str]) -> List[str]:
        """Notes on printed formulas that disagree with the computed objects."""
        return []
