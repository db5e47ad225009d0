"""Accurate computations with Said-Ball-Vandermonde matrices.

The bidiagonal decomposition BD(A) of the collocation matrix of the Said-Ball
basis is computed straight from the nodes with high relative accuracy and
then drives linear solves, determinants, interpolation and eigenvalues.  An
exact rational oracle (:mod:`saidball.oracle`) checks every floating-point path.
"""

from .basis import NodeSet, build_matrix, eval_basis, eval_poly
from .bidiagonal import (
    BDFactorization,
    decompose,
    determinant_closed_form,
    multiplier,
    pivot,
    transpose_multiplier,
)
from .eigen import Spectrum, eigenvalues, qr_eigen
from .scalar import audit_subtractions, parse_scalar
from .tn import SolveReport, apply_inverse, interpolate, reconstruct, solve

__all__ = [
    "NodeSet",
    "build_matrix",
    "eval_basis",
    "eval_poly",
    "BDFactorization",
    "decompose",
    "determinant_closed_form",
    "multiplier",
    "pivot",
    "transpose_multiplier",
    "Spectrum",
    "eigenvalues",
    "qr_eigen",
    "audit_subtractions",
    "parse_scalar",
    "SolveReport",
    "apply_inverse",
    "interpolate",
    "reconstruct",
    "solve",
]

__version__ = "0.1.0"
