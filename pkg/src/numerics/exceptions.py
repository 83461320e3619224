"""Exception hierarchy for the numerical core."""

from typing import Optional


class MopkitError(Exception):
    """Base class for every error raised by mopkit."""


class SizeMismatchError(MopkitError, ValueError):
    """Matrix or polynomial sizes do not agree."""


class SingularMatrixError(MopkitError, ArithmeticError):
    """A matrix that must be invertible is numerically singular."""

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index


class DegenerateWeightError(MopkitError, ArithmeticError):
    """A weight (or a Gram block built from it) is not positive definite."""


class NotPolynomialError(MopkitError, ArithmeticError):
    """A conjugated operator is not of hypergeometric form on the samples."""


class HypergeometricError(MopkitError, ValueError):
    """A hypergeometric series cannot be evaluated with the given parameters."""


class InsufficientSamplesError(MopkitError, ValueError):
    """Too few (or repeated) sample points for a sampled linear-algebra problem."""


class UnknownModelError(MopkitError, KeyError):
    """The requested model is not registered."""
