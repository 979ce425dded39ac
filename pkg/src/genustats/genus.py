"""Genus numbers of the field families, as functions of arithmetic invariants.

All genus numbers are returned in factored form so family admissibility can be
checked.  Also houses the local density C(d) of split-supported ideals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from ._kernels import kronecker_vec, neumaier_sum
from .arith import (FactoredInteger, FundamentalDiscriminant, factorize,
                    fundamental_discriminant, is_square, kronecker_symbol, omega_counts,
                    psi_q, sieve_primes)
from .errors import (BudgetError, DomainError, InconsistentInvariantsError,
                     PreconditionError)
from .symfun import TruncatedValue


@dataclass(frozen=True)
class GenusNumber:
    """A genus number as {prime: exponent}; zero exponents are kept as labels."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for p, e in self.factors:
            if e < 0:
                raise InconsistentInvariantsError(f"negative exponent {e} at {p}")

    @classmethod
    def of(cls, exps: Mapping[int, int]) -> "GenusNumber":
        return cls(tuple(sorted((int(p), int(e)) for p, e in exps.items())))

    @property
    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def exponent(self, p: int) -> int:
        return dict(self.factors).get(p, 0)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def __mul__(self, other: "GenusNumber") -> "GenusNumber":
        out = self.as_dict()
        for p, e in other.factors:
            out[p] = out.get(p, 0) + e
        return GenusNumber.of(out)

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class CubicInvariants:
    """disc = d f^2, 9 d f^2 or 81 d f^2 with f squarefree and prime to 3."""

    disc: int
    d: int
    f: int
    three_totally_ramified: bool
    is_cyclic: bool


def cubic_invariants(disc: int) -> CubicInvariants:
    disc = int(disc)
    if disc == 0:
        raise DomainError("cubic discriminant cannot be 0")
    fac = factorize(disc)
    f = 1
    for p, e in fac.factors:
        if p != 3 and e >= 2:
            f *= p
    cyclic = is_square(disc)
    d = 1 if cyclic else fundamental_discriminant(disc).D
    return CubicInvariants(disc, d, f, fac.exponent(3) >= 2, cyclic)


def genus_quadratic(D: FundamentalDiscriminant | int) -> GenusNumber:
    if not isinstance(D, FundamentalDiscriminant):
        D = FundamentalDiscriminant(int(D))
    return GenusNumber.of({2: D.omega - 1})


def cubic_genus_exponent(inv: CubicInvariants) -> int:
    """Exponent of 3 in the genus number of a cubic field."""
    e = sum(1 for p in factorize(inv.f).primes if p % 3 == 1)
    if inv.three_totally_ramified and inv.d % 3 == 1:
        e += 1
    if inv.is_cyclic:
        if e == 0:
            raise InconsistentInvariantsError(f"cyclic cubic disc {inv.disc} has no ramified prime")
        e -= 1
    return e


def genus_cubic(inv: CubicInvariants) -> GenusNumber:
    return GenusNumber.of({3: cubic_genus_exponent(inv)})


def genus_cubic_direct(inv: CubicInvariants) -> GenusNumber:
    """Genus via t = #{totally ramified p with (d/p) = 1}, 3^t or 3^(t-1)."""
    tot = list(factorize(inv.f).primes)
    if inv.three_totally_ramified:
        tot.append(3)
    t = sum(1 for p in tot if kronecker_symbol(inv.d, p) == 1)
    if inv.is_cyclic:
        if t == 0:
            raise InconsistentInvariantsError(f"cyclic cubic disc {inv.disc} has no ramified prime")
        t -= 1
    return GenusNumber.of({3: t})


def genus_sextic_compositum(K: CubicInvariants, D_F: FundamentalDiscriminant | int) \
        -> GenusNumber:
    if not isinstance(D_F, FundamentalDiscriminant):
        D_F = FundamentalDiscriminant(int(D_F))
    if K.disc % D_F.D == 0:
        raise PreconditionError(f"{D_F.D} divides {K.disc}; the fields need not be disjoint")
    return genus_cubic(K) * genus_quadratic(D_F)


def check_cyclic_conductor(q: int, conductor: int) -> FactoredInteger:
    """Validate f = (1 or q^2) * distinct primes = 1 mod q, f > 1."""
    if conductor < 2:
        raise DomainError(f"conductor must exceed 1, got {conductor}")
    fac = factorize(conductor)
    for p, e in fac.factors:
        if p == q:
            if e != 2:
                raise DomainError(f"{q}-part of a degree-{q} conductor must be {q}^2")
        elif p % q != 1 or e != 1:
            raise DomainError(f"{conductor} is not an admissible degree-{q} conductor")
    return fac


def genus_cyclic_q(q: int, conductor: int) -> GenusNumber:
    if q < 3 or len(factorize(q).factors) != 1 or factorize(q).factors[0][1] != 1:
        raise DomainError(f"q must be an odd prime, got {q}")
    fac = check_cyclic_conductor(q, conductor)
    return GenusNumber.of({q: psi_q(fac, q) - 1})


def genus_s3cq(K: CubicInvariants, q: int, conductor: int) -> GenusNumber:
    if K.is_cyclic:
        raise DomainError("S3 x Cq needs a non-cyclic cubic field")
    if q < 5:
        raise DomainError(f"q must be a prime >= 5, got {q}")
    return genus_cubic(K) * genus_cyclic_q(q, conductor)


def dagger_condition(coeffs: Sequence[int], q: int) -> bool:
    """Eisenstein at q plus a_2 = ... = a_{q-1} = a_1 + a_q = 0 mod q^2,
    for x^q + a_1 x^(q-1) + ... + a_q."""
    a = [int(c) for c in coeffs]
    if len(a) != q:
        raise DomainError(f"expected {q} coefficients, got {len(a)}")
    q2 = q * q
    if any(c % q for c in a) or a[-1] % q2 == 0:
        return False
    return all(c % q2 == 0 for c in a[1:-1]) and (a[0] + a[-1]) % q2 == 0


def genus_prime_degree(q: int, t: int, cyclic: bool, q_totally_ramified: bool,
                       dagger: bool = False) -> GenusNumber:
    """Genus of a degree-q field with t totally ramified primes p = 1 mod q."""
    if t < 0:
        raise DomainError("t must be nonnegative")
    if cyclic:
        e = t if q_totally_ramified else t - 1
        if e < 0:
            raise InconsistentInvariantsError("cyclic field with no ramified prime")
    else:
        e = t + 1 if (dagger and q_totally_ramified) else t
    return GenusNumber.of({q: e})


def _check_radicand(a: int) -> FactoredInteger:
    a = int(a)
    if a in (0, 1, -1):
        raise DomainError(f"{a} is not an admissible radicand")
    fac = factorize(a)
    if any(e % 2 == 0 for _, e in fac.factors):
        raise DomainError(f"{a} has a prime exponent not prime to 4")
    return fac


def genus_pure_quartic(a: int) -> GenusNumber:
    """Genus of Q(a^(1/4)) from omega_1, omega_3 and a mod 4."""
    fac = _check_radicand(a)
    _, _, w1, w3 = omega_counts(fac)
    if a % 2 == 0:
        e = w3 + 2 * w1
    elif a % 4 == 1:
        e = w3 - 1 + 2 * w1
    else:
        N = 0
        b = a + 1
        while b % 2 == 0:
            b //= 2
            N += 1
        e = w3 + min(N, 3) - 2 + 2 * w1
    if e < 0:
        raise InconsistentInvariantsError(f"radicand {a} gives a genus exponent {e}")
    return GenusNumber.of({2: e})


def genus_pure_quartic_ishida(a: int) -> GenusNumber:
    """(1/2) prod_{p | a} gcd(e(p), p-1) times the 2-adic branch factor.

    Every p | a is totally ramified (e(p) = 4) since its exponent is odd.
    """
    fac = _check_radicand(a)
    g = Fraction(1, 2)
    for p in fac.primes:
        g *= math.gcd(4, p - 1)
    if a % 2 == 0:
        g *= 2
    elif a % 4 == 3:
        b, N = a + 1, 0
        while b % 2 == 0:
            b //= 2
            N += 1
        g *= 2 ** (min(N, 3) - 1)
    if g.denominator != 1:
        raise InconsistentInvariantsError(f"radicand {a} gives genus {g}")
    v = g.numerator
    e = v.bit_length() - 1
    if 1 << e != v:
        raise InconsistentInvariantsError(f"genus {v} is not a power of 2")
    return GenusNumber.of({2: e})


def pure_quartic_disc(a: int) -> int:
    _check_radicand(a)
    r = a % 8
    if r == 1:
        return -4 * a**3
    if r == 5:
        return -16 * a**3
    return -256 * a**3


def d4_genus_bound_check(a: int, omega2: int) -> bool:
    return a // 2 <= omega2 <= a + 2


def selmer4_order(unit_rank: int, ray2rank: int) -> int:
    if unit_rank < 0 or ray2rank < 0 or unit_rank + ray2rank < 1:
        raise DomainError("need unit_rank + ray2rank >= 1")
    return 2 ** (unit_rank + ray2rank - 1)


def disc_compositum(D_K: int, m: int, D_L: int, n: int, max_bits: int = 4096) -> int:
    """D_K^m * D_L^n for fields of coprime degrees n = [K:Q], m = [L:Q]."""
    if math.gcd(m, n) != 1:
        raise PreconditionError(f"degrees {n} and {m} are not coprime")
    bits = m * abs(D_K).bit_length() + n * abs(D_L).bit_length()
    if bits > max_bits:
        raise BudgetError(f"compositum discriminant would need ~{bits} bits")
    return D_K**m * D_L**n


# ---------------------------------------------------------------------------
# local density C(d)


def l_one_chi(D: int) -> float:
    """L(1, chi_D) for a fundamental discriminant D by Dirichlet's finite formulas."""
    N = abs(D)
    a = np.arange(1, N, dtype=np.int64)
    chi = kronecker_vec(D, a).astype(np.float64)
    if D < 0:
        return -math.pi / N**1.5 * neumaier_sum(chi * a.astype(np.float64))
    return -neumaier_sum(chi * np.log(np.sin(math.pi * a / N))) / math.sqrt(N)


def local_density_C(d: int, prime_limit: int = 500_000, mode: str = "exact-residue") \
        -> TruncatedValue:
    """Leading constant C(d) of the count of split-supported squarefree ideals."""
    D = fundamental_discriminant(d).D
    if mode not in ("exact-residue", "as-printed"):
        raise DomainError(f"unknown mode {mode!r}")
    ps = sieve_primes(prime_limit) if prime_limit >= 2 else np.zeros(0, dtype=np.int64)
    chi = kronecker_vec(D, np.asarray(ps, dtype=np.int64))
    p = ps.astype(np.float64)
    if mode == "exact-residue":
        split = np.log1p(2.0 / p) + 2.0 * np.log1p(-1.0 / p)
    else:
        split = 2.0 * np.log1p(-1.0 / p**2)
    logs = np.where(chi == 1, split, np.where(chi == -1, np.log1p(-1.0 / p**2),
                                                np.log1p(-1.0 / p)))
    # ramified primes divide D, so they are all <= |D|; include any beyond the limit
    extra = [q for q in factorize(D).primes if q > prime_limit]
    value = math.exp(neumaier_sum(logs) + sum(math.log1p(-1.0 / q) for q in extra))
    if mode == "exact-residue":
        value *= l_one_chi(D)
    # unramified factors differ from 1 by at most 3/p^2
    tau = 3.0 / max(prime_limit, 2)
    return TruncatedValue(value, value * math.expm1(tau),
                          {"prime_limit": int(prime_limit), "mode": mode, "D": D})
