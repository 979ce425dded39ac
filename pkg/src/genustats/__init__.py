"""Genus number statistics for families of number fields.

Modules: arith (integers, discriminants), symfun (Euler products and
discriminant sums), genus (genus formulas), cubic_enum (cubic fields),
families (family counters), constants (named constants), cli.
"""

from .errors import BudgetError, DomainError, GenusStatsError, PreconditionError

__all__ = ["BudgetError", "DomainError", "GenusStatsError", "PreconditionError"]
__version__ = "0.1.0"
