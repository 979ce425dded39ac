"""Configured resource ceilings.

Budgets are explicit module-level values; callers may pass overrides where an
operation accepts them, nothing is read from the environment.
"""

# Largest sieve the library will allocate in one piece.
SIEVE_LIMIT_MAX = 2 * 10**9

# Trial division covers |n| up to this ceiling.
FACTOR_CEILING = 10**12

# Largest cubic discriminant bound accepted by the enumerator.
CUBIC_X_MAX = 10**8

# Brute-force oracle ceiling.
ORACLE_X_MAX = 10**5

# Segment length for streamed sieves over discriminants.
BLOCK_SIZE = 1 << 21
