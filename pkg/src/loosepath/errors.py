"""Exception hierarchy shared by every module."""

from __future__ import annotations


class LoosePathError(Exception):
    """Base class for all errors raised by this package."""


class InvalidTripleError(LoosePathError, ValueError):
    pass


class DimensionError(LoosePathError, ValueError):
    pass


class CapabilityError(LoosePathError):
    """An operation was asked for more than it is configured to handle."""


class InvalidParameterError(LoosePathError, ValueError):
    pass


class ConstructionUndefinedError(CapabilityError):
    """A construction has no definition in the current configuration (the rocket)."""


class FormatError(LoosePathError, ValueError):
    """Malformed .3g / .col / certificate input."""


class InvalidInputError(LoosePathError, ValueError):
    pass


class NotDecomposableError(LoosePathError, ValueError):
    def __init__(self, predicate: str, message: str | None = None):
        self.predicate = predicate
        super().__init__(message or f"graph fails decomposition precondition: {predicate}")


class IncompleteSearchError(LoosePathError):
    """Raised when a search exhausts its budget before it can certify its answer.

    ``best`` carries the best value found so far; it is a lower bound only.
    """

    def __init__(self, message: str, best=None, stats=None):
        super().__init__(message)
        self.best = best
        self.stats = stats
