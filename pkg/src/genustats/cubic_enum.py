"""Cubic fields with |disc| <= X, one per isomorphism class.

Fields correspond to GL2(Z)-classes of irreducible maximal integral binary
cubic forms with the same discriminant; the enumerator walks one reduced
representative per class.  ``brute_force_cubic_fields`` is an independent
oracle that searches monic generating polynomials instead.
"""

from __future__ import annotations

import math
import os
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

from . import config
from ._cubic_kernels import (UNIMODULAR, enumerate_negative, enumerate_positive,
                             form_disc, genus_exponents, is_irreducible, nonmaximal_at)
from .arith import factorize, sieve_primes, spf_table
from .errors import BudgetError, DomainError
from .genus import CubicInvariants, cubic_invariants

CACHE_MAGIC = b"GATL"
CACHE_VERSION = 1


@dataclass(frozen=True)
class BinaryCubicForm:
    """a x^3 + b x^2 y + c x y^2 + d y^3, irreducible and primitive."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if math.gcd(math.gcd(self.a, self.b), math.gcd(self.c, self.d)) != 1:
            raise DomainError(f"form {self.coeffs} is not primitive")
        if self.disc == 0:
            raise DomainError(f"form {self.coeffs} has zero discriminant")
        if not self.irreducible():
            raise DomainError(f"form {self.coeffs} is reducible")

    @property
    def coeffs(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def disc(self) -> int:
        a, b, c, d = self.coeffs
        return b * b * c * c - 4 * a * c**3 - 4 * b**3 * d - 27 * a * a * d * d + 18 * a * b * c * d

    def irreducible(self) -> bool:
        a, b, c, d = self.coeffs
        if a == 0:
            return False
        if a < 0:
            a, b, c, d = -a, -b, -c, -d
        return bool(is_irreducible(a, b, c, d))


@dataclass(frozen=True)
class CubicFieldRecord:
    disc: int
    invariants: CubicInvariants
    source_form: Union[BinaryCubicForm, str]


def is_maximal_at_p(form: BinaryCubicForm, p: int) -> bool:
    """Whether the cubic ring attached to the form is maximal at p."""
    if form.disc % (p * p):
        return True
    return not nonmaximal_at(form.a, form.b, form.c, form.d, p)


def _a_max(X: int) -> int:
    return int((16 * X / 27) ** 0.25) + 2


def _run_partition(args: tuple) -> np.ndarray:
    X, a_lo, a_hi, spf, maximal_only = args
    pos = enumerate_positive(X, a_lo, a_hi, spf, UNIMODULAR, maximal_only)
    neg = enumerate_negative(X, a_lo, a_hi, spf, maximal_only)
    return np.concatenate((pos, neg))


def _partitions(X: int, parts: int) -> list[tuple[int, int]]:
    top = _a_max(X) + 1
    edges = np.unique(np.linspace(1, top, max(1, parts) + 1).astype(int))
    return [(int(lo), int(hi)) for lo, hi in zip(edges[:-1], edges[1:])]


def cubic_forms(X: int, partitions: int = 1, workers: int = 1,
                maximal_only: bool = True) -> np.ndarray:
    """Rows (a, b, c, d, disc) of reduced representatives, sorted by (disc, form).

    The output does not depend on how the leading-coefficient range is split.
    """
    X = int(X)
    if X < 1:
        raise DomainError("X must be positive")
    if X > config.CUBIC_X_MAX:
        raise BudgetError(f"X = {X} exceeds cubic enumeration budget {config.CUBIC_X_MAX}")
    spf = spf_table(X)
    jobs = [(X, lo, hi, spf, maximal_only) for lo, hi in _partitions(X, partitions)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(_run_partition, jobs))
    else:
        chunks = [_run_partition(j) for j in jobs]
    rows = np.concatenate(chunks) if chunks else np.zeros((0, 5), dtype=np.int64)
    order = np.lexsort((rows[:, 3], rows[:, 2], rows[:, 1], rows[:, 0], rows[:, 4]))
    return rows[order]


def write_cache(path: str, X: int, discs: np.ndarray) -> None:
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC + struct.pack("<IQ", CACHE_VERSION, int(X)))
        fh.write(np.asarray(discs, dtype="<i8").tobytes())


def read_cache(path: str) -> tuple[int, np.ndarray]:
    with open(path, "rb") as fh:
        head = fh.read(16)
        if len(head) != 16 or head[:4] != CACHE_MAGIC:
            raise DomainError(f"{path} is not a cubic field cache")
        version, X = struct.unpack("<IQ", head[4:])
        if version != CACHE_VERSION:
            raise DomainError(f"unsupported cache version {version}")
        data = np.frombuffer(fh.read(), dtype="<i8").astype(np.int64)
    return int(X), data


def cubic_discriminants(X: int, cache: str | None = None, partitions: int = 1,
                        workers: int = 1) -> np.ndarray:
    """Sorted discriminants of all cubic fields with |disc| <= X.

    A cache file whose bound is at least X is reused; otherwise the list is
    computed and, when a path is given, written.
    """
    if cache and os.path.exists(cache):
        cX, discs = read_cache(cache)
        if cX >= X:
            return np.sort(discs[np.abs(discs) <= X])
    discs = np.sort(cubic_forms(X, partitions, workers)[:, 4])
    if cache:
        write_cache(cache, X, discs)
    return discs


def enumerate_cubic_fields(X: int, partitions: int = 1, workers: int = 1) \
        -> Iterator[CubicFieldRecord]:
    """One record per cubic field with 0 < |disc| <= X."""
    if X < 23:
        raise DomainError("X must be at least 23, the smallest cubic |disc|")
    for a, b, c, d, D in cubic_forms(X, partitions, workers).tolist():
        yield CubicFieldRecord(D, cubic_invariants(D), BinaryCubicForm(a, b, c, d))


def cubic_genus_exponents(discs: np.ndarray) -> np.ndarray:
    """Vectorized exponent of 3 in the genus number (same rule as genus_cubic)."""
    discs = np.asarray(discs, dtype=np.int64)
    if discs.size == 0:
        return np.zeros(0, dtype=np.int64)
    spf = spf_table(int(np.max(np.abs(discs))))
    return genus_exponents(discs, spf)


# ---------------------------------------------------------------------------
# oracle


def _poly_disc(s1: int, s2: int, s3: int) -> int:
    # x^3 - s1 x^2 + s2 x - s3 as the form (1, -s1, s2, -s3)
    return int(form_disc(1, -s1, s2, -s3))


def _root_signature(s1: int, s2: int, s3: int, pdisc: int, count: int = 80) -> dict:
    """Number of roots mod p at the first primes not dividing the polynomial
    discriminant; there it equals the splitting type of p in the field."""
    sig = {}
    for p in sieve_primes(3000).tolist():
        if pdisc % p == 0:
            continue
        sig[p] = sum(1 for x in range(p) if (x**3 - s1 * x * x + s2 * x - s3) % p == 0)
        if len(sig) == count:
            break
    return sig


def _same_field(u: dict, v: dict) -> bool:
    common = u.keys() & v.keys()
    return len(common) >= 40 and all(u[p] == v[p] for p in common)


def brute_force_cubic_fields(X: int) -> list[CubicFieldRecord]:
    """Cubic fields with |disc| <= X found by a monic-polynomial search, one
    record per field, sorted by discriminant.

    Every cubic field has an integral generator with trace 0 or 1 and
    T2 <= 1/3 + sqrt(4/3) sqrt(|d|/3) (Hunter).  Field discriminants come from
    a round-two maximal order computation whenever the polynomial
    discriminant is not squarefree away from units; isomorphic fields are
    merged using splitting types at unramified primes.
    """
    from sympy import Poly, symbols, ZZ
    from sympy.polys.numberfields.basis import round_two

    X = int(X)
    if X > config.ORACLE_X_MAX:
        raise BudgetError(f"oracle bound {X} exceeds {config.ORACLE_X_MAX}")
    x = symbols("x")
    found: dict[int, list[dict]] = {}
    for t in (0, 1):
        T2 = t * t / 3 + math.sqrt(4 / 3) * math.sqrt(X / 3)
        s2_lo = math.ceil((t * t - T2) / 2)
        s2_hi = math.floor((t * t + T2) / 2)
        s3_max = math.floor((T2 / 3) ** 1.5)
        for s2 in range(s2_lo, s2_hi + 1):
            for s3 in range(-s3_max, s3_max + 1):
                if s3 == 0:
                    continue
                pd = _poly_disc(t, s2, s3)
                if pd == 0:
                    continue
                if not is_irreducible(1, -t, s2, -s3):
                    continue
                sq = 1
                for p, e in factorize(pd).factors:
                    sq *= p ** (e // 2)
                if abs(pd) // (sq * sq) > X:
                    continue
                if sq == 1:
                    D = pd
                else:
                    D = int(round_two(Poly(x**3 - t * x**2 + s2 * x - s3, x, domain=ZZ))[1])
                if abs(D) > X:
                    continue
                sig = _root_signature(t, s2, s3, pd)
                reps = found.setdefault(D, [])
                if not any(_same_field(sig, r) for r in reps):
                    reps.append(sig)
    out = []
    for D in sorted(found):
        out.extend(CubicFieldRecord(D, cubic_invariants(D), "oracle") for _ in found[D])
    return out
