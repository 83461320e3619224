"""
mopkit - Source Package

Builds matrix orthogonal polynomials Q_n = F_n·F_0^{-1} from pre-sequences
of matrix orthogonal functions and verifies their properties numerically.
"""

# Package version
__version__ = "1.0.0"

# Package description
__description__ = "mopkit - matrix orthogonal polynomials from pre-sequences"

# Main components available for import
__all__ = [
    "config",
    "numerics",
    "models",
    "services",
    "utils",
    "components",
    "main"
]
