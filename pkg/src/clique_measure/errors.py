"""Exception types shared across the package."""

from __future__ import annotations


class ContractError(ValueError):
    """A documented precondition was violated by the caller."""


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the configured work cap."""


class VerificationError(RuntimeError):
    """A runtime self-check failed.

    ``node`` and ``assignment`` carry the first witness when one exists.
    """

    def __init__(self, message: str, node: int | None = None, assignment: int | None = None):
        super().__init__(message)
        self.node = node
        self.assignment = assignment


class CoreVerificationError(VerificationError):
    """The canonical core map failed one of its verified properties."""
