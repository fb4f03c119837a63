"""Exception types shared across the package."""

from __future__ import annotations

__all__ = ["ValidationError", "BudgetExceeded"]


class ValidationError(ValueError):
    """A table-backed object failed one of its exhaustive invariant checks.

    `witness` carries the offending elements (indices, tuples) when available
    so reports can point at a concrete counterexample.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the configured budget; nothing was computed."""
