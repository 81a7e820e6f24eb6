"""Exact symbolic toolkit for zero-dimensional ideals in three variables.

Builds reduced Groebner bases, Macaulay inverse systems, Hilbert-function
combinatorics and tangent-space dimensions from scratch over the rationals,
and verifies a shipped corpus of flat-family / cleavability / smooth-point
certificates for degree-11 subschemes of affine 3-space.
"""

__version__ = "0.1.0"

from .rings import RingContext, Polynomial, apolar_apply, parse_polynomial

__all__ = [
    "RingContext",
    "Polynomial",
    "apolar_apply",
    "parse_polynomial",
    "__version__",
]
