"""Exception taxonomy shared across the package."""

from __future__ import annotations


class FrobqecError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(FrobqecError):
    """Malformed or out-of-contract input: bad documents, wrong shapes,
    non-symmetric or imperfect forms, non-isotropic label modules."""


class ResourceLimitError(FrobqecError):
    """A requested object exceeds a hard size bound."""


class ConsistencyError(FrobqecError):
    """An internal invariant failed.  Indicates a construction bug, not
    bad user input."""


class DiagnosticError(FrobqecError):
    """A numeric cross-check could not give a trustworthy answer (for
    example a pivot inside the dead band of the rank routine)."""
