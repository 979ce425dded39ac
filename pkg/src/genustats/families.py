"""Family-level enumerators and counters.

Quadratic discriminant streams, S3 x C2 composita with genus histograms, the
exceptional pairs counted by eta(X), cyclic degree-q conductors with field
multiplicities, the pure quartic family and split-supported ideal counts.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np
from numba import njit

from ._kernels import kronecker_vec
from .arith import FundamentalDiscriminant, fundamental_discriminant, sieve_primes, spf_table
from .cubic_enum import cubic_discriminants, cubic_genus_exponents
from .errors import BudgetError, DomainError
from .genus import GenusNumber, genus_pure_quartic, pure_quartic_disc
from .symfun import discriminant_blocks


def quadratic_discriminants(X: int) -> Iterator[FundamentalDiscriminant]:
    """Every fundamental discriminant with |D| <= X, ascending |D| (negative first)."""
    for blk in discriminant_blocks(int(X)):
        for D in blk.D.tolist():
            yield FundamentalDiscriminant(D)


@dataclass
class GenusHistogram:
    counts: dict = field(default_factory=dict)
    total: int = 0
    X: int = 0
    family: str = ""

    def add(self, key: tuple, n: int = 1) -> None:
        self.counts[key] = self.counts.get(key, 0) + n
        self.total += n

    def merge(self, other: "GenusHistogram") -> "GenusHistogram":
        out = GenusHistogram(dict(self.counts), self.total, max(self.X, other.X), self.family)
        for k, v in other.counts.items():
            out.counts[k] = out.counts.get(k, 0) + v
        out.total += other.total
        return out

    def proportion(self, key: tuple) -> float:
        return self.counts.get(key, 0) / self.total if self.total else 0.0


def _icbrt(n: int) -> int:
    r = int(round(n ** (1.0 / 3.0)))
    while r**3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def _noncyclic_cubics_by_abs(Y: int) -> tuple[np.ndarray, np.ndarray]:
    """Non-cyclic cubic discriminants with |D| <= Y sorted by |D|, with genus exponents."""
    if Y < 23:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    discs = cubic_discriminants(Y)
    roots = np.sqrt(np.abs(discs).astype(np.float64)).round().astype(np.int64)
    keep = ~((discs > 0) & (roots * roots == discs))
    discs = discs[keep]
    order = np.argsort(np.abs(discs), kind="stable")
    discs = discs[order]
    return discs, cubic_genus_exponents(discs)


def _pair_scan(X: int):
    """Yield (D_F, cubic discs in range, their genus exponents) for the pair counts."""
    X = int(X)
    Ymax = math.isqrt(X // 27)
    discs, gexp = _noncyclic_cubics_by_abs(Ymax)
    absd = np.abs(discs)
    fmax = _icbrt(X)
    if fmax < 3:
        return
    for F in quadratic_discriminants(fmax):
        Y = math.isqrt(X // abs(F.D) ** 3)
        n = int(np.searchsorted(absd, Y, side="right"))
        if n == 0:
            continue
        yield F, discs[:n], gexp[:n]


def count_s3c2(X: int) -> tuple[int, GenusHistogram]:
    """Pairs (K, F) with K a non-cyclic cubic field, F quadratic, D_F not dividing
    D_K and |D_K|^2 |D_F|^3 <= X, with the genus histogram keyed by
    (omega(D_F) - 1, exponent of 3 in g_K)."""
    hist = GenusHistogram(X=int(X), family="S3xC2")
    for F, discs, gexp in _pair_scan(X):
        ok = discs % F.D != 0
        k = F.omega - 1
        for l, n in zip(*np.unique(gexp[ok], return_counts=True)):
            hist.add((k, int(l)), int(n))
    return hist.total, hist


def count_eta(X: int) -> int:
    """Pairs (K, F) as in count_s3c2 but with D_F | D_K."""
    total = 0
    for F, discs, _ in _pair_scan(X):
        total += int(np.count_nonzero(discs % F.D == 0))
    return total


# ---------------------------------------------------------------------------
# cyclic fields of prime degree


@dataclass(frozen=True)
class ConductorRecord:
    q: int
    f: int
    multiplicity: int
    disc: int

    @property
    def ramified(self) -> int:
        return int(round(math.log(self.multiplicity, self.q - 1))) + 1 if self.q > 2 else 1


@njit(cache=True)
def _cq_scan(fmax, q, spf):
    fs = []
    ss = []
    for f in range(2, fmax + 1):
        n = f
        s = 0
        ok = True
        while n > 1:
            p = spf[n]
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if p == q:
                if e != 2:
                    ok = False
                    break
            elif p % q != 1 or e != 1:
                ok = False
                break
            s += 1
        if ok:
            fs.append(f)
            ss.append(s)
    return np.array(fs, dtype=np.int64), np.array(ss, dtype=np.int64)


def _iroot(n: int, k: int) -> int:
    r = int(round(n ** (1.0 / k)))
    while r > 0 and r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def cq_conductor_arrays(q: int, conductor_bound: int) -> tuple[np.ndarray, np.ndarray]:
    """(f, s): admissible degree-q conductors f <= bound and their ramified-prime counts."""
    if q < 3 or not all(q % p for p in range(2, math.isqrt(q) + 1)):
        raise DomainError(f"q must be an odd prime, got {q}")
    if conductor_bound < 2:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    return _cq_scan(int(conductor_bound), int(q), spf_table(int(conductor_bound)))


def enumerate_cq_conductors(q: int, disc_bound: int | None = None,
                            conductor_bound: int | None = None) -> Iterator[ConductorRecord]:
    """Conductors of cyclic degree-q fields with f^(q-1) <= disc_bound, ascending,
    each with the number (q-1)^(s-1) of fields sharing it."""
    if conductor_bound is None:
        if disc_bound is None:
            raise DomainError("give disc_bound or conductor_bound")
        conductor_bound = _iroot(int(disc_bound), q - 1)
    fs, ss = cq_conductor_arrays(q, conductor_bound)
    for f, s in zip(fs.tolist(), ss.tolist()):
        yield ConductorRecord(q, f, (q - 1) ** (s - 1), f ** (q - 1))


def cyclic_field_count_oracle(q: int, f: int) -> int:
    """Number of cyclic degree-q fields of conductor exactly f, by Moebius
    inversion over divisors g | f of the index-q subgroup counts of (Z/g)^x;
    the rank of (Z/g)^x / q-th powers is found by listing q-th powers."""

    def subgroups(g: int) -> int:
        units = [x for x in range(1, g + 1) if math.gcd(x, g) == 1] if g > 1 else [1]
        powers = {pow(x, q, g) if g > 1 else 0 for x in units}
        r = round(math.log(len(units) // len(powers), q)) if len(powers) else 0
        return (q**r - 1) // (q - 1)

    def mobius(n: int) -> int:
        out, m = 1, n
        for p in range(2, n + 1):
            if p * p > m:
                break
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                out = -out
        if m > 1:
            out = -out
        return out

    return sum(mobius(f // g) * subgroups(g) for g in range(1, f + 1) if f % g == 0)


# ---------------------------------------------------------------------------
# pure quartic fields


@njit(cache=True)
def _in_A(Y, spf):
    """Flags for n in 0..Y: n >= 2 and every prime exponent is 1 or 3."""
    out = np.zeros(Y + 1, dtype=np.bool_)
    for n0 in range(2, Y + 1):
        n = n0
        ok = True
        while n > 1:
            p = spf[n]
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e != 1 and e != 3:
                ok = False
                break
        out[n0] = ok
    return out


def pure_quartic_members(Y: int) -> np.ndarray:
    """Ascending radicands n in [2, Y] whose prime exponents are all 1 or 3."""
    if Y < 2:
        return np.zeros(0, np.int64)
    if Y > 2 * 10**8:
        raise BudgetError(f"radicand bound {Y} exceeds budget")
    return np.flatnonzero(_in_A(int(Y), spf_table(int(Y)))).astype(np.int64)


def pure_quartic_A_counts(Y: int) -> tuple[int, int, int, int]:
    """(A, A1, A2, A3): members n <= Y in total and by n = 1, 5, other mod 8."""
    n = pure_quartic_members(Y)
    a1 = int(np.count_nonzero(n % 8 == 1))
    a2 = int(np.count_nonzero(n % 8 == 5))
    return int(n.size), a1, a2, int(n.size) - a1 - a2


@dataclass
class PureQuarticFamily:
    X: int
    A_counts: tuple[int, int, int, int] | None
    B_count: int
    B_histogram: dict[int, int]


def pure_quartic_B_radicands(X: int) -> np.ndarray:
    """Radicands a of the family with |disc(Q(a^(1/4)))| <= X."""
    top = _icbrt(int(X) // 4)
    n = pure_quartic_members(top)
    r = n % 8
    coef = np.where(r == 1, 4, np.where(r == 5, 16, 256))
    return n[coef * n**3 <= X]


def pure_quartic_family(X: int, a_count_bound: int | None = 10**8) -> PureQuarticFamily:
    """A-counts at X (when X <= a_count_bound), B(X) and its genus histogram.

    B(X) = A1((X/4)^(1/3)) + A2((X/16)^(1/3)) + A3((X/256)^(1/3)); it is
    evaluated radicand by radicand with exact integer comparisons.
    """
    if X < 1:
        raise DomainError("X must be positive")
    A = pure_quartic_A_counts(X) if a_count_bound is None or X <= a_count_bound else None
    rad = pure_quartic_B_radicands(X)
    hist = Counter(genus_pure_quartic(int(a)).exponent(2) for a in rad.tolist())
    return PureQuarticFamily(int(X), A, int(rad.size), dict(sorted(hist.items())))


# ---------------------------------------------------------------------------
# split-supported ideals


@njit(cache=True)
def _split_ideal_sum(X, primes, split):
    weight = np.ones(X + 1, dtype=np.int64)
    for i in range(primes.shape[0]):
        p = primes[i]
        if split[i]:
            for m in range(p, X + 1, p):
                weight[m] *= 2
            pp = p * p
            for m in range(pp, X + 1, pp):
                weight[m] = 0
        else:
            for m in range(p, X + 1, p):
                weight[m] = 0
    total = 0
    for n in range(1, X + 1):
        total += weight[n]
    return total


def split_ideal_count(d: int, X: int) -> int:
    """Sum of 2^omega(n) over squarefree n <= X built from primes splitting in
    Q(sqrt(d)); n = 1 counts once."""
    D = fundamental_discriminant(d).D
    X = int(X)
    if X < 1:
        return 0
    if X > 10**9:
        raise BudgetError(f"split ideal count bound {X} exceeds budget")
    if X < 2:
        return 1
    primes = np.asarray(sieve_primes(X), dtype=np.int64)
    split = kronecker_vec(D, primes) == 1
    return int(_split_ideal_sum(X, primes, split))


def split_ideal_count_oracle(d: int, X: int) -> int:
    """Literal ideal enumeration: squarefree norms n <= X, one choice of prime
    ideal above each split p | n (two per p), counted as distinct pairs."""
    D = fundamental_discriminant(d).D
    count = 0
    for n in range(1, X + 1):
        m, ideals, ok = n, [()], True
        p = 2
        while m > 1 and ok:
            if p * p > m:
                p = m
            if m % p == 0:
                m //= p
                if m % p == 0 or kronecker_vec(D, np.array([p]))[0] != 1:
                    ok = False
                    break
                ideals = [t + ((p, s),) for t in ideals for s in (0, 1)]
            p += 1
        if ok:
            count += len(ideals)
    return count


# ---------------------------------------------------------------------------
# moments


@dataclass
class MomentAccumulator:
    """Exact running (sum of g^r, count); merge is commutative."""

    r: int
    total: int = 0
    count: int = 0

    LIMIT = 1 << 127

    def __post_init__(self) -> None:
        if not 0 <= self.r <= 8:
            raise DomainError(f"moment order r must lie in [0, 8], got {self.r}")

    def add(self, g: GenusNumber | int) -> None:
        v = g.value if isinstance(g, GenusNumber) else int(g)
        self.total += v**self.r
        self.count += 1
        if self.total >= self.LIMIT:
            raise BudgetError("moment sum exceeds 128-bit accumulation")

    def merge(self, other: "MomentAccumulator") -> "MomentAccumulator":
        if other.r != self.r:
            raise DomainError("cannot merge moments of different order")
        out = MomentAccumulator(self.r, self.total + other.total, self.count + other.count)
        if out.total >= self.LIMIT:
            raise BudgetError("moment sum exceeds 128-bit accumulation")
        return out


def moment_accumulate(records: Iterable[GenusNumber | int], r: int) -> tuple[int, int]:
    acc = MomentAccumulator(r)
    for g in records:
        acc.add(g)
    return acc.total, acc.count
