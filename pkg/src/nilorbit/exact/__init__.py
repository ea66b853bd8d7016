"""Exact linear algebra over the Gaussian rationals Q(i)."""

from .matrix import DimensionError, GMatrix, GVector
from .scalar import GScalar, I, ONE, ZERO, as_gscalar, parse_gaussian
from .subspace import (
    Filtration,
    NotInvariantError,
    Subspace,
    echelonize,
    image,
    induced_map,
    induced_map_on_quotient,
    kernel,
    preimage,
    rref,
    solve,
    span,
)

__all__ = [
    "DimensionError",
    "Filtration",
    "GMatrix",
    "GScalar",
    "GVector",
    "I",
    "NotInvariantError",
    "ONE",
    "Subspace",
    "ZERO",
    "as_gscalar",
    "echelonize",
    "image",
    "induced_map",
    "induced_map_on_quotient",
    "kernel",
    "parse_gaussian",
    "preimage",
    "rref",
    "solve",
    "span",
]
