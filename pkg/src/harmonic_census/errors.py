"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class HarmonicCensusError(Exception):
    """Base class for all library errors."""


class DomainError(HarmonicCensusError, ValueError):
    """An argument is outside the mathematical domain of the operation
    (non-prime modulus, dimension out of range, zero where a unit is
    required, and so on)."""


class ModulusMismatchError(HarmonicCensusError, ValueError):
    """Two values that must share a modulus (or a dimension) do not."""


class ContractViolationError(HarmonicCensusError, AssertionError):
    """An internal identity that is guaranteed by theorem failed to hold.
    This always signals an implementation bug, never bad input."""


class BudgetExceededError(HarmonicCensusError, RuntimeError):
    """A brute-force enumeration would exceed its configured budget."""

    def __init__(self, message: str, required: int, budget: int):
        super().__init__(message)
        self.required = required
        self.budget = budget
