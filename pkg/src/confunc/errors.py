"""Exception hierarchy shared by all confunc modules."""

from __future__ import annotations

__all__ = [
    "ConfuncError",
    "DomainError",
    "BracketError",
    "ConvergenceError",
    "BoundDivergenceError",
    "GridError",
    "MassDeficitError",
]


class ConfuncError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ConfuncError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class BracketError(ConfuncError, ValueError):
    """A root bracket does not straddle the requested target value."""


class ConvergenceError(ConfuncError, RuntimeError):
    """An iterative solver failed to reach its tolerance within its cap."""


class BoundDivergenceError(ConfuncError, ArithmeticError):
    """The requested bound diverges; no finite value exists.

    Raised at full confidence in both position and momentum, where the
    inverse-eigenvalue bound has no finite argument. This is a distinct
    condition, never encoded as ``inf`` or ``nan``.
    """


class GridError(ConfuncError, ValueError):
    """A grid cannot support the requested construction."""


class MassDeficitError(ConfuncError, ArithmeticError):
    """The available probability mass falls short of the requested level."""
