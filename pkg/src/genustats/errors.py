"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: DomainError -> 2, BudgetError -> 3.
"""


class GenusStatsError(Exception):
    """Base class for library errors."""


class DomainError(GenusStatsError, ValueError):
    """An input lies outside the domain of the requested operation."""


class PreconditionError(DomainError):
    """A documented precondition of the operation does not hold."""


class InconsistentInvariantsError(DomainError):
    """Invariants supplied together cannot describe a single field."""


class BudgetError(GenusStatsError, RuntimeError):
    """A configured resource ceiling (memory, range, overflow) would be exceeded."""
