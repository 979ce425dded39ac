"""Truncated Euler products, restricted elementary symmetric sums, and sums
over fundamental discriminants.

Every numeric result is a TruncatedValue carrying a rigorous (or explicitly
labelled heuristic) tail bound together with the truncation that produced it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterator, Sequence

import numpy as np
from scipy.special import zeta

from . import config
from ._kernels import factor_segment, kronecker_vec, neumaier_sum
from .arith import FundamentalDiscriminant, sieve_primes
from .errors import DomainError

CONVENTIONS = ("as-printed", "count-true")


@dataclass(frozen=True)
class TruncatedValue:
    """A real number known up to +-tail_bound, with the truncation used."""

    value: Any
    tail_bound: float = 0.0
    truncation: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.tail_bound >= 0:
            raise DomainError(f"tail bound must be nonnegative, got {self.tail_bound}")

    @property
    def lo(self) -> float:
        return float(self.value) - self.tail_bound

    @property
    def hi(self) -> float:
        return float(self.value) + self.tail_bound

    def contains(self, x: float, slack: float = 0.0) -> bool:
        return self.lo - slack <= x <= self.hi + slack

    def __float__(self) -> float:
        return float(self.value)


def _check_majorant(majorant: tuple[float, float] | None) -> None:
    if majorant is None:
        return
    c, delta = majorant
    if c < 0 or not delta > 0:
        raise DomainError(f"majorant c/p^(1+delta) with delta={delta} does not converge")


def majorant_tail(majorant: tuple[float, float], P: float) -> float:
    """Bound for sum_{p > P} c/p^(1+delta) by c * int_P^inf t^(-1-delta) dt."""
    c, delta = majorant
    return c * P ** (-delta) / delta


@dataclass(frozen=True)
class PrimePool:
    """Primes p <= P satisfying a predicate, each carrying a weight.

    ``member`` and ``weight`` act on integer arrays of primes.  ``majorant``
    is (c, delta) with weight(p) <= c/p^(1+delta); ``None`` marks a finite
    pool, i.e. exactly the members up to P with no tail.
    """

    name: str
    member: Callable[[np.ndarray], np.ndarray]
    weight: Callable[[np.ndarray], np.ndarray]
    P: int
    majorant: tuple[float, float] | None = None
    exact_weight: Callable[[int], Fraction] | None = None

    def __post_init__(self) -> None:
        _check_majorant(self.majorant)

    @property
    def finite(self) -> bool:
        return self.majorant is None

    def primes(self) -> np.ndarray:
        if self.P < 2:
            return np.zeros(0, dtype=np.int64)
        ps = sieve_primes(self.P)
        return ps[self.member(ps)]

    def weights(self) -> np.ndarray:
        ps = self.primes()
        return np.asarray(self.weight(ps), dtype=np.float64)

    def exact_weights(self) -> list[Fraction]:
        if self.exact_weight is None:
            raise DomainError(f"pool {self.name} has no exact weight")
        return [self.exact_weight(int(p)) for p in self.primes()]

    def tail_mass(self) -> float:
        return 0.0 if self.finite else majorant_tail(self.majorant, self.P)

    def describe(self) -> dict:
        return {"pool": self.name, "prime_limit": int(self.P)}

    # constructors
    @classmethod
    def congruence(cls, r: int, m: int, weight, P: int, majorant=None, exact_weight=None,
                   name: str | None = None) -> "PrimePool":
        return cls(name or f"p={r} mod {m}", lambda ps: ps % m == r, weight, P, majorant,
                   exact_weight)

    @classmethod
    def all_except(cls, excluded: Sequence[int], weight, P: int, majorant=None,
                   exact_weight=None, name: str | None = None) -> "PrimePool":
        ex = np.array(sorted(excluded), dtype=np.int64)
        return cls(name or f"all p not in {list(ex)}", lambda ps: ~np.isin(ps, ex), weight, P,
                   majorant, exact_weight)

    @classmethod
    def splitting(cls, D: int, kind: str, weight, P: int, majorant=None, exact_weight=None) \
            -> "PrimePool":
        """Primes that split (kind='split'), stay inert or ramify in Q(sqrt(D))."""
        target = {"split": 1, "inert": -1, "ramified": 0}[kind]

        def member(ps: np.ndarray) -> np.ndarray:
            return kronecker_vec(D, np.asarray(ps, dtype=np.int64)) == target

        return cls(f"{kind} in Q(sqrt({D}))", member, weight, P, majorant, exact_weight)


def w_standard(ps: np.ndarray) -> np.ndarray:
    """The weight 1/(p(p+1))."""
    ps = ps.astype(np.float64)
    return 1.0 / (ps * (ps + 1.0))


def w_standard_exact(p: int) -> Fraction:
    return Fraction(1, p * (p + 1))


def euler_product(pool: PrimePool, g: Callable[[np.ndarray], np.ndarray] | None = None,
                  majorant: tuple[float, float] | None = None) -> TruncatedValue:
    """prod over pool members p <= P of (1 + g(p)).

    ``g`` defaults to the pool weight and ``majorant`` (|g(p)| <= c/p^(1+delta))
    to the pool's.  The tail bound is |value| * (exp(sum_{p>P} majorant) - 1).
    """
    if g is None:
        g = pool.weight
        majorant = majorant or pool.majorant
    _check_majorant(majorant)
    ps = pool.primes()
    if ps.size:
        gv = np.asarray(g(ps), dtype=np.float64)
        if np.any(gv <= -1.0):
            raise DomainError("Euler factor 1 + g(p) must be positive")
        value = math.exp(neumaier_sum(np.log1p(gv)))
    else:
        value = 1.0
    if pool.finite:
        tail = 0.0
    else:
        if majorant is None:
            raise DomainError("an infinite pool needs a tail majorant for g")
        tail = abs(value) * math.expm1(majorant_tail(majorant, pool.P))
    return TruncatedValue(value, tail, pool.describe())


def elementary_from_power_sums(power_sums: Sequence, lmax: int) -> list:
    """Newton's identities: e_l = (1/l) sum_{j=1}^{l} (-1)^(j-1) e_{l-j} P_j."""
    if lmax < 0:
        raise DomainError("lmax must be nonnegative")
    one = Fraction(1) if power_sums and isinstance(power_sums[0], Fraction) else 1.0
    e = [one]
    for l in range(1, lmax + 1):
        terms = [(-1) ** (j - 1) * e[l - j] * power_sums[j - 1] for j in range(1, l + 1)]
        s = sum(terms, Fraction(0)) if isinstance(one, Fraction) else math.fsum(terms)
        e.append(s / l)
    return e


def restricted_elementary_sums(pool: PrimePool, lmax: int, exact: bool = False) \
        -> list[TruncatedValue]:
    """e_0..e_lmax of the pool weights (sums over squarefree products of l pool primes).

    With ``exact`` the pool must be finite and carry exact weights; values are
    Fractions.  Otherwise floats, with tail bound sum_{j>=1} e_{l-j} tau^j / j!
    where tau bounds the weight mass beyond P.
    """
    if lmax < 0:
        raise DomainError("lmax must be nonnegative")
    if exact:
        ws = pool.exact_weights()
        psums = [sum((w**j for w in ws), Fraction(0)) for j in range(1, lmax + 1)]
    else:
        w = pool.weights()
        psums = [neumaier_sum(w**j) for j in range(1, lmax + 1)]
    e = elementary_from_power_sums(psums, lmax)
    tau = pool.tail_mass()
    out = []
    for l in range(lmax + 1):
        tail = math.fsum(float(e[l - j]) * tau**j / math.factorial(j) for j in range(1, l + 1))
        out.append(TruncatedValue(e[l], tail, {**pool.describe(), "l": l}))
    return out


# ---------------------------------------------------------------------------
# fundamental discriminants


@dataclass
class DiscBlock:
    """A run of fundamental discriminants in ascending |D| (then sign)."""

    D: np.ndarray
    absD: np.ndarray
    omega: np.ndarray
    nuprod: np.ndarray

    def __len__(self) -> int:
        return int(self.D.size)


def discriminant_blocks(bound: int, lower: int = 3, block_size: int | None = None) \
        -> Iterator[DiscBlock]:
    """Stream all fundamental discriminants with lower <= |D| <= bound.

    Built from the three residue families: odd squarefree d, 4d with d odd
    squarefree, and +-8d with d odd squarefree.
    """
    block_size = block_size or config.BLOCK_SIZE
    bound = int(bound)
    primes = np.asarray(sieve_primes(max(2, math.isqrt(bound) + 1)))
    lo = max(1, int(lower))
    while lo <= bound:
        hi = min(bound + 1, lo + block_size)
        v2, sqf, omega, nu = factor_segment(lo, hi, primes)
        n = np.arange(lo, hi, dtype=np.int64)
        odd = (v2 == 0) & sqf & (n > 1)
        four = (v2 == 2) & sqf
        eight = (v2 == 3) & sqf
        sign = np.zeros(n.size, dtype=np.int64)
        sign[odd] = np.where(n[odd] % 4 == 1, 1, -1)
        m4 = n[four] // 4
        sign[four] = np.where(m4 % 4 == 1, -1, 1)
        single = odd | four
        # +-8d contributes two rows; emit -|D| first
        idx_single = np.flatnonzero(single)
        idx_eight = np.flatnonzero(eight)
        rows = np.concatenate((idx_single, idx_eight, idx_eight))
        signs = np.concatenate((sign[idx_single], -np.ones(idx_eight.size, np.int64),
                                np.ones(idx_eight.size, np.int64)))
        order = np.lexsort((signs, rows))
        rows, signs = rows[order], signs[order]
        absD = n[rows]
        yield DiscBlock(signs * absD, absD, omega[rows].astype(np.int64), nu[rows])
        lo = hi


def block_weight(fn: Callable[[DiscBlock], np.ndarray]) -> Callable:
    """Mark a weight function as acting on whole DiscBlocks (vectorized)."""
    fn.vectorized = True  # type: ignore[attr-defined]
    return fn


def _apply_weight(weight: Callable, blk: DiscBlock) -> np.ndarray:
    if getattr(weight, "vectorized", False):
        return np.asarray(weight(blk), dtype=np.float64)
    return np.array([float(weight(FundamentalDiscriminant(int(D)))) for D in blk.D],
                    dtype=np.float64)


def disc_density_tail(k: float, bound: float, C: float = 1.0, eps: float = 0.0) -> float:
    """Bound for sum_{|D| > bound} C |D|^eps / |D|^k.

    At most seven fundamental discriminants have |D| in any run of eight
    consecutive integers, so the count is majorized by one per integer.
    """
    if k - eps <= 1:
        return math.inf
    return C * bound ** (1.0 - k + eps) / (k - 1.0 - eps)


def weighted_disc_sum(k: float, weight: Callable, bound: int,
                      weight_bound: float | tuple[float, float] | None = None,
                      lower: int = 3) -> TruncatedValue:
    """Sum of weight(D)/|D|^k over fundamental discriminants with |D| <= bound.

    ``weight`` takes a FundamentalDiscriminant, or a DiscBlock when decorated
    with :func:`block_weight`.  ``weight_bound`` is C or (C, eps) with
    |weight(D)| <= C |D|^eps; if omitted, the largest observed |weight| is used
    and the tail is flagged as heuristic.
    """
    if k <= 1:
        raise DomainError(f"k must exceed 1, got {k}")
    partial: list[float] = []
    wmax = 0.0
    for blk in discriminant_blocks(bound, lower=lower):
        if not len(blk):
            continue
        w = _apply_weight(weight, blk)
        wmax = max(wmax, float(np.max(np.abs(w))))
        partial.append(neumaier_sum(w * blk.absD.astype(np.float64) ** (-k)))
    value = math.fsum(partial)
    if weight_bound is None:
        C, eps, basis = wmax, 0.0, "observed-max-weight"
    elif isinstance(weight_bound, tuple):
        (C, eps), basis = weight_bound, "declared"
    else:
        C, eps, basis = float(weight_bound), 0.0, "declared"
    tail = disc_density_tail(k, bound, C, eps)
    return TruncatedValue(value, tail, {"disc_bound": int(bound), "k": k, "tail_basis": basis})


def odd_zeta_product(k: float, prime_limit: int | None = None) -> TruncatedValue:
    """S(k) = prod_{p >= 3} (1 + p^-k); exact via zeta values when no limit is given."""
    if k <= 1:
        raise DomainError(f"k must exceed 1, got {k}")
    if prime_limit is None:
        v = float(zeta(k) / zeta(2 * k) / (1.0 + 2.0**-k))
        return TruncatedValue(v, 0.0, {"prime_limit": None})
    pool = PrimePool.all_except([2], lambda ps: ps.astype(np.float64) ** -k, prime_limit,
                                (1.0, k - 1.0), name="odd primes")
    return euler_product(pool)


def odd_nu_product(k: float, prime_limit: int = 500_000) -> TruncatedValue:
    """T(k) = prod_{p >= 3} (1 + nu_p p^-k)."""
    if k <= 1:
        raise DomainError(f"k must exceed 1, got {k}")

    def g(ps: np.ndarray) -> np.ndarray:
        p = ps.astype(np.float64)
        return (p + 1.0) / (p**k * (p * p + p + 1.0))

    # nu_p < 1/p, so the factor is below p^-(1+k)
    pool = PrimePool.all_except([2], g, prime_limit, (1.0, k), name="odd primes")
    return euler_product(pool)


def _check_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise DomainError(f"convention must be one of {CONVENTIONS}, got {convention!r}")


def disc_zeta_sum(k: float, convention: str = "count-true", mode: str = "closed",
                  bound: int | None = None, prime_limit: int | None = None) -> TruncatedValue:
    """Sum over fundamental discriminants of 1/|D|^k.

    Closed mode evaluates S(k)(1 + 4^-k + c 8^-k) - 1, with c = 2 under
    count-true (both signs of 8d occur) and c = 1 under as-printed.  Direct
    mode sums the series itself up to ``bound``.
    """
    if k <= 1:
        raise DomainError(f"k must exceed 1, got {k}")
    _check_convention(convention)
    if mode == "direct":
        if bound is None:
            raise DomainError("direct mode needs a bound")
        one = block_weight(lambda blk: np.ones(len(blk)))
        tv = weighted_disc_sum(k, one, bound, weight_bound=1.0)
        return TruncatedValue(tv.value, tv.tail_bound, {**tv.truncation, "mode": "direct"})
    if mode != "closed":
        raise DomainError(f"unknown mode {mode!r}")
    S = odd_zeta_product(k, prime_limit)
    c = 2.0 if convention == "count-true" else 1.0
    bracket = 1.0 + 4.0**-k + c * 8.0**-k
    return TruncatedValue(S.value * bracket - 1.0, S.tail_bound * bracket,
                          {**S.truncation, "k": k, "mode": "closed", "convention": convention})


def disc_nu_weighted_sum(k: float, convention: str = "count-true", mode: str = "closed",
                         bound: int | None = None, prime_limit: int = 500_000) \
        -> TruncatedValue:
    """Sum over fundamental discriminants of prod_{p | D} nu_p / |D|^k.

    The closed form is T(k)(1 + 3/(7*4^k) + 6/(7*8^k)) - 1.  Its 8-adic term
    already counts both signs of 8d (6/7 = 2 nu_2), so the two conventions
    give the same value here.
    """
    if k <= 1:
        raise DomainError(f"k must exceed 1, got {k}")
    _check_convention(convention)
    if mode == "direct":
        if bound is None:
            raise DomainError("direct mode needs a bound")
        nu = block_weight(lambda blk: blk.nuprod)
        tv = weighted_disc_sum(k, nu, bound, weight_bound=1.0)
        return TruncatedValue(tv.value, tv.tail_bound, {**tv.truncation, "mode": "direct"})
    if mode != "closed":
        raise DomainError(f"unknown mode {mode!r}")
    T = odd_nu_product(k, prime_limit)
    bracket = 1.0 + 3.0 / (7.0 * 4.0**k) + 6.0 / (7.0 * 8.0**k)
    return TruncatedValue(T.value * bracket - 1.0, T.tail_bound * bracket,
                          {**T.truncation, "k": k, "mode": "closed", "convention": convention})
