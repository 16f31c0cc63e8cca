"""Exact Turán-type computations for the 3-uniform loose path of length three."""

from .errors import (
    CapabilityError,
    ConstructionUndefinedError,
    DimensionError,
    FormatError,
    IncompleteSearchError,
    InvalidInputError,
    InvalidParameterError,
    InvalidTripleError,
    LoosePathError,
    NotDecomposableError,
)
from .graph import ThreeGraph, triple_rank, triple_unrank
from .patterns import C, M, P, P2, P2K3, get_pattern

__version__ = "0.1.0"

__all__ = [
    "ThreeGraph",
    "triple_rank",
    "triple_unrank",
    "P",
    "C",
    "M",
    "P2",
    "P2K3",
    "get_pattern",
    "LoosePathError",
    "InvalidTripleError",
    "DimensionError",
    "CapabilityError",
    "ConstructionUndefinedError",
    "InvalidParameterError",
    "InvalidInputError",
    "FormatError",
    "NotDecomposableError",
    "IncompleteSearchError",
]
