"""
Numerics Package

The numerical core of mopkit. Modules are imported by name
(`from src.numerics.matpoly import MatrixPolynomial`); this file does not
import them eagerly so that `src.utils` can depend on `exceptions`.

- matpoly:     polynomials with square-matrix coefficients
- quadrature:  Gauss–Legendre rules and the matrix inner product
- weights:     matrix weights, moments, conjugation, PSD reports
- presequence: pre-sequences, the Q_n construction and orthogonality checks
- diffop:      right-acting differential operators and conjugation
- hyper:       scalar pFq series and the matrix 2H1 series
- commutant:   commuting space and irreducibility of a weight
"""

__all__ = [
    "exceptions",
    "matpoly",
    "quadrature",
    "weights",
    "presequence",
    "diffop",
    "hyper",
    "commutant",
]
