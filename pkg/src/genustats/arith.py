"""Primes, factorization, quadratic symbols and small arithmetic invariants."""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import config
from .errors import BudgetError, DomainError

_sieve_lock = threading.Lock()
_sieve_cache: np.ndarray = np.array([2, 3, 5, 7], dtype=np.int64)
_sieve_limit = 10


def _eratosthenes(limit: int) -> np.ndarray:
    """Odd-only sieve of Eratosthenes; returns primes <= limit as int64."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    # index i represents the odd number 2i+1
    half = (limit + 1) // 2
    is_p = np.ones(half, dtype=bool)
    is_p[0] = False
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if is_p[i]:
            p = 2 * i + 1
            is_p[p * p // 2 :: p] = False
    odd = 2 * np.flatnonzero(is_p).astype(np.int64) + 1
    return np.concatenate((np.array([2], dtype=np.int64), odd))


def sieve_primes(limit: int) -> np.ndarray:
    """Primes in [2, limit] in ascending order (read-only int64 array).

    A single sieve is kept and grown on demand; the returned array is a view.
    """
    global _sieve_cache, _sieve_limit
    limit = int(limit)
    if limit < 2:
        raise DomainError(f"sieve limit must be >= 2, got {limit}")
    if limit > config.SIEVE_LIMIT_MAX:
        raise BudgetError(f"sieve limit {limit} exceeds budget {config.SIEVE_LIMIT_MAX}")
    with _sieve_lock:
        if limit > _sieve_limit:
            grown = max(limit, min(2 * _sieve_limit, config.SIEVE_LIMIT_MAX))
            arr = _eratosthenes(grown)
            arr.flags.writeable = False
            _sieve_cache, _sieve_limit = arr, grown
        cache = _sieve_cache
    return cache[: int(np.searchsorted(cache, limit, side="right"))]


def spf_table(limit: int) -> np.ndarray:
    """Smallest-prime-factor table for 0..limit as int32 (spf[0] = spf[1] = 0)."""
    if limit > config.SIEVE_LIMIT_MAX // 4:
        raise BudgetError(f"spf table up to {limit} exceeds budget")
    spf = np.zeros(limit + 1, dtype=np.int32)
    if limit < 2:
        return spf
    spf[2::2] = 2
    for p in sieve_primes(max(2, math.isqrt(limit))):
        if p == 2:
            continue
        view = spf[p * p :: 2 * p]
        view[view == 0] = p
    rest = spf == 0
    rest[:2] = False
    spf[rest] = np.flatnonzero(rest).astype(np.int32)
    return spf


@dataclass(frozen=True)
class FactoredInteger:
    """A nonzero integer with its prime factorization."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.value == 0:
            raise DomainError("0 has no factorization")
        prod, last = 1, 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise DomainError(f"malformed factor list {self.factors}")
            prod *= p**e
            last = p
        if prod != abs(self.value):
            raise DomainError(f"factors {self.factors} do not multiply to |{self.value}|")

    @property
    def sign(self) -> int:
        return 1 if self.value > 0 else -1

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)


def factorize(n: int) -> FactoredInteger:
    """Factor n by trial division against the cached sieve."""
    n = int(n)
    if n == 0:
        raise DomainError("cannot factor 0")
    m = abs(n)
    if m > config.FACTOR_CEILING:
        raise BudgetError(f"|n| = {m} exceeds factorization ceiling {config.FACTOR_CEILING}")
    out: list[tuple[int, int]] = []
    if m > 1:
        root = math.isqrt(m)
        for p in sieve_primes(max(2, root)).tolist():
            if p * p > m:
                break
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                out.append((p, e))
        if m > 1:
            out.append((m, 1))
    return FactoredInteger(n, tuple(out))


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n) with the standard extensions at 2, -1 and 0."""
    a, n = int(a), int(n)
    if n == 0:
        if a == 0:
            raise DomainError("kronecker symbol (0/0) is undefined")
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 == 1 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n) for odd positive n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def squarefree_kernel(m: int) -> int:
    """The squarefree integer k with m = k * s^2 (same sign as m)."""
    k = 1
    for p, e in factorize(m).factors:
        if e % 2:
            k *= p
    return k if m > 0 else -k


@dataclass(frozen=True)
class FundamentalDiscriminant:
    """Discriminant of a quadratic field."""

    D: int

    def __post_init__(self) -> None:
        D = self.D
        if D in (0, 1):
            raise DomainError(f"{D} is not a fundamental discriminant")
        if D % 4 == 1:
            ok = squarefree_kernel(D) == D
        elif D % 4 == 0:
            m = D // 4
            ok = m % 4 in (2, 3) and squarefree_kernel(m) == m
        else:
            ok = False
        if not ok:
            raise DomainError(f"{D} is not a fundamental discriminant")

    @property
    def factored(self) -> FactoredInteger:
        return factorize(self.D)

    @property
    def primes(self) -> tuple[int, ...]:
        return self.factored.primes

    @property
    def omega(self) -> int:
        return len(self.primes)

    def nu_product(self) -> Fraction:
        """Exact product of nu_p over primes p | D."""
        out = Fraction(1)
        for p in self.primes:
            out *= nu_p(p)
        return out

    def __int__(self) -> int:
        return self.D


def fundamental_discriminant(m: int) -> FundamentalDiscriminant:
    """Discriminant of Q(sqrt(m)) for a nonsquare integer m."""
    m = int(m)
    if m == 0 or is_square(m):
        raise DomainError(f"{m} is a square; Q(sqrt({m})) is not a quadratic field")
    k = squarefree_kernel(m)
    return FundamentalDiscriminant(k if k % 4 == 1 else 4 * k)


class OmegaCounts(NamedTuple):
    omega: int
    omega2: int
    omega1: int
    omega3: int


def omega_counts(n: FactoredInteger) -> OmegaCounts:
    """(omega, omega^(2), omega_1, omega_3): distinct primes, primes with p^2 | n,
    odd primes = 1 mod 4, odd primes = 3 mod 4."""
    f = n.factors
    return OmegaCounts(
        len(f),
        sum(1 for _, e in f if e >= 2),
        sum(1 for p, _ in f if p % 4 == 1),
        sum(1 for p, _ in f if p % 4 == 3),
    )


def psi_q(n: FactoredInteger, q: int) -> int:
    """Number of distinct primes p | n with p = 1 mod q or p = q."""
    return sum(1 for p, _ in n.factors if p == q or p % q == 1)


def nu_p(p: int) -> Fraction:
    """The local weight (p+1)/(p^2+p+1) as an exact rational."""
    p = int(p)
    if p < 2:
        raise DomainError(f"nu_p needs a prime, got {p}")
    return Fraction(p + 1, p * p + p + 1)


def is_prime(n: int) -> bool:
    n = int(n)
    if n < 2:
        return False
    f = factorize(n).factors
    return len(f) == 1 and f[0][1] == 1
