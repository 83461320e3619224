"""
Models Package

Concrete pre-sequences the toolkit knows how to build and verify.

- cp2:      type (n, 1) spherical functions of the complex projective plane
- legendre: the scalar Legendre polynomials, a control case
"""

from typing import Dict

from src.numerics.exceptions import UnknownModelError

from .base import Model
from .cp2 import Cp2Model
from .legendre import LegendreModel

# Registered models by name
MODEL_REGISTRY: Dict[str, Model] = {
    model.name: model for model in (Cp2Model(), LegendreModel())
}


def get_model(name: str) -> Model:
    """
    Look up a registered model.

    Raises:
        UnknownModelError: if no model has this name
    """
    try:
        return MODEL_REGISTRY[name]
    except KeyError:
        raise UnknownModelError(name) from None


__all__ = [
    "Model",
    "Cp2Model",
    "LegendreModel",
    "MODEL_REGISTRY",
    "get_model",
]
