"""
Configuration Settings for mopkit

This file contains all the numeric defaults and switches for the mopkit toolkit.
Think of this as the "control panel": every tolerance, node margin and series
truncation used by the numerics and by the verification service lives here.
"""

import os
from typing import List, Tuple
from dotenv import load_dotenv

# Load environment variables from .env file
# This lets a developer set MOPKIT_LOG or MOPKIT_SEED without touching code
load_dotenv()


class AppConfig:
    """
    Main configuration class for mopkit.

    All attributes are plain class attributes so that modules can read them
    through the shared `app_config` instance and tests can override them
    with `monkeypatch.setattr`.
    """

    # =============================================================================
    # ENVIRONMENT CONFIGURATION
    # Values a user may override from the environment or a .env file
    # =============================================================================

    # Logging level name for diagnostics on stderr
    LOG_LEVEL: str = os.getenv('MOPKIT_LOG', 'WARNING')

    # Seed for the random interior sample points used by the checks
    SAMPLE_SEED: int = int(os.getenv('MOPKIT_SEED', '20240101'))

    # =============================================================================
    # MATRIX POLYNOMIAL CONFIGURATION
    # =============================================================================

    # Coefficients below this fraction of the largest coefficient norm are trimmed
    TRIM_TOLERANCE: float = 1e-12

    # A matrix is singular when sigma_min < ratio * sigma_max
    SINGULARITY_RATIO: float = 1e-10

    # =============================================================================
    # QUADRATURE CONFIGURATION
    # =============================================================================

    # Newton iteration on Legendre polynomials stops below this step size
    NEWTON_TOLERANCE: float = 1e-15
    NEWTON_MAX_ITERATIONS: int = 100

    # Extra nodes on top of w_max + n for the polynomial-exact default rules
    NODE_MARGIN: int = 8

    # =============================================================================
    # VERIFICATION CONFIGURATION
    # =============================================================================

    # Relative residual tolerance for identities that are exact up to rounding
    RESIDUAL_TOLERANCE: float = 1e-9

    # Gram off-diagonal blocks relative to the adjacent diagonal norms
    GRAM_TOLERANCE: float = 1e-10

    # Sampled (F-side) operator checks run at this multiple of the residual tolerance
    SAMPLED_TOLERANCE_FACTOR: float = 10.0

    # Eigenvalue floor for positive semidefiniteness, relative to the spectral norm
    PSD_TOLERANCE: float = 1e-10

    # Number of random interior sample points per check
    SAMPLE_COUNT: int = 20

    # Window for operators with a 1/x coefficient
    OPERATOR_WINDOW: Tuple[float, float] = (0.05, 0.95)

    # =============================================================================
    # HYPERGEOMETRIC SERIES CONFIGURATION
    # =============================================================================

    # Maximum number of series terms for non-terminating sums
    HYPER_MAX_TERMS: int = 64

    # Tail bound for non-terminating sums
    HYPER_TAIL_TOLERANCE: float = 1e-14

    # Coefficient vectors this small relative to the largest one end a matrix series
    HYPER_TERMINATION_RATIO: float = 1e-12

    # =============================================================================
    # COMMAND-LINE CONFIGURATION
    # =============================================================================

    PROGRAM_NAME: str = 'mopkit'

    SCHEMA_VERSION: str = '1'

    # Registered models
    AVAILABLE_MODELS: List[str] = [
        'cp2',        # type (n,1) spherical functions of the complex projective plane
        'legendre',   # scalar control model on [-1, 1]
    ]

    # Checks understood by `mopkit verify --checks`
    AVAILABLE_CHECKS: List[str] = [
        'gram',
        'factorization',
        'recursion',
        'eigen',
        'constants',
        'commutant',
        'hyper-rows',
        'leading',
        'monic',
    ]

    OUTPUT_FORMATS: List[str] = ['json', 'csv']

    DEFAULT_FORMAT: str = 'json'

    # Significant digits for CSV floats (round-trip safe)
    FLOAT_DIGITS: int = 17


# Create the global instance that other parts of the package use
app_config = AppConfig()
