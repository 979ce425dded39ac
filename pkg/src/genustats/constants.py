"""Named constants and tables, each returned as a ConstantReport.

Every value is a TruncatedValue plus the convention and truncation inputs that
produced it, so any discrepancy against a printed figure is attributable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import zeta

from . import config
from ._kernels import neumaier_sum
from .errors import BudgetError, DomainError
from .families import _iroot, cq_conductor_arrays
from .genus import local_density_C
from .arith import sieve_primes
from .symfun import (PrimePool, TruncatedValue, disc_density_tail, disc_nu_weighted_sum,
                     disc_zeta_sum, discriminant_blocks, euler_product, majorant_tail,
                     restricted_elementary_sums, w_standard, w_standard_exact)

ZETA2 = math.pi**2 / 6
ZETA3 = float(zeta(3))

# printed reference values
TABLE1_PRINTED = {
    (0, 0): (0.0856846, 0.451847), (0, 1): (0.0147267, 0.0776774),
    (0, 2): (0.000899445, 0.00474258), (0, 3): (0.0000272822, 0.000143885),
    (1, 0): (0.0196851, 0.103812), (1, 1): (0.00338364, 0.0178464),
    (1, 2): (0.000206575, 0.00108961), (1, 3): (0.00000626954, 0.0000330577),
    (2, 0): (0.00208768, 0.0110099), (2, 1): (0.000358938, 0.00189273),
    (2, 2): (0.0000219153, 0.00011556), (2, 3): (0.000000664862, 0.00000350598),
    (3, 0): (0.000136073, 0.000717728), (3, 1): (0.0000233866, 0.000123385),
    (3, 2): (0.00000142840, 0.00000753326), (3, 3): (0.0000000433452, 0.000000228552),
}
MOMENTS_S3_PRINTED = (1.000000, 1.078541, 1.340801, 2.409905, 9.659183, 153.99614)
MOMENTS_S3C2_PRINTED = (1.000000, 2.61129, 4.46212, 21.775405, 627.98246, 276821.108977)
GENUS_ONE_TARGET = 0.9623

COEFFICIENTS = {"29/81": (29 / 81, 1 / 324), "29/27": (29 / 27, 1 / 108)}


@dataclass(frozen=True)
class ConstantReport:
    name: str
    value: TruncatedValue
    convention: str
    inputs: dict = field(default_factory=dict)

    def __float__(self) -> float:
        return float(self.value.value)

    def as_dict(self) -> dict:
        return {"quantity": self.name, "value": float(self.value.value),
                "tail_bound": float(self.value.tail_bound), "convention": self.convention,
                "truncation": {**self.value.truncation, **self.inputs}}


def _tv(value: float, tail: float, **trunc) -> TruncatedValue:
    return TruncatedValue(float(value), float(tail), trunc)


# ---------------------------------------------------------------------------
# prime-pool products


def pi2(prime_limit: int = 500_000) -> TruncatedValue:
    """prod_{p = 2 mod 3} (1 + 1/(p(p+1)))."""
    return euler_product(PrimePool.congruence(2, 3, w_standard, prime_limit, (1.0, 1.0)))


def _w1_pool(prime_limit: int, scale: float = 1.0) -> PrimePool:
    return PrimePool.congruence(1, 3, lambda ps: scale * w_standard(ps), prime_limit,
                                (scale, 1.0), w_standard_exact)


def genus_one_density(prime_limit: int = 500_000) -> ConstantReport:
    """3 zeta(3) (29/(81 zeta(2))) prod_{p = 2 mod 3}(1 + 1/(p(p+1)))."""
    P = pi2(prime_limit)
    c = 3 * ZETA3 * 29 / (81 * ZETA2)
    return ConstantReport("genus_one_density", _tv(c * P.value, c * P.tail_bound,
                                                   prime_limit=prime_limit),
                          "29/81", {"prime_limit": prime_limit})


# ---------------------------------------------------------------------------
# lambda, A(k), B(l)


def lambda_const(convention: str = "as-printed", prime_limit: int = 500_000) -> ConstantReport:
    """(1/(3 zeta(3))) [(1 + Z(3/2)) - (1 + N(3/2))] with Z the zeta sum and N
    the nu-weighted sum over fundamental discriminants."""
    if prime_limit < 1000:
        raise DomainError("prime_limit must be at least 1000")
    Z = disc_zeta_sum(1.5, convention, "closed", prime_limit=prime_limit)
    N = disc_nu_weighted_sum(1.5, convention, "closed", prime_limit=prime_limit)
    c = 1 / (3 * ZETA3)
    v = c * (Z.value - N.value)
    return ConstantReport("lambda", _tv(v, c * (Z.tail_bound + N.tail_bound),
                                        prime_limit=prime_limit, zeta_bracket=1 + Z.value,
                                        nu_bracket=1 + N.value),
                          convention, {"prime_limit": prime_limit})


@lru_cache(maxsize=8)
def _a_sums(disc_bound: int, kmax: int = 12) -> tuple[float, ...]:
    """sum over D with omega(D) = k+1 of (1 - prod nu_p)/|D|^(3/2), k = 0..kmax."""
    parts: list[list[float]] = [[] for _ in range(kmax + 1)]
    for blk in discriminant_blocks(disc_bound):
        if not len(blk):
            continue
        w = (1.0 - blk.nuprod) * blk.absD.astype(np.float64) ** -1.5
        for k in range(kmax + 1):
            sel = blk.omega == k + 1
            if sel.any():
                parts[k].append(neumaier_sum(w[sel]))
    return tuple(math.fsum(p) for p in parts)


def A_k(k: int, disc_bound: int = 10**8) -> ConstantReport:
    """A(k) by direct summation (count-true by construction)."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    if disc_bound > config.SIEVE_LIMIT_MAX:
        raise BudgetError(f"disc_bound {disc_bound} exceeds budget")
    sums = _a_sums(int(disc_bound), max(12, k))
    tail = disc_density_tail(1.5, disc_bound)
    return ConstantReport(f"A({k})", _tv(sums[k], tail, disc_bound=disc_bound, k=k),
                          "count-true", {"disc_bound": disc_bound})


def B_l(l: int, prime_limit: int = 500_000, coefficients: str = "29/81") -> ConstantReport:
    """c1 Pi2 e_l(W1) + c2 Pi2 e_{l-1}(W1), W1 = {p = 1 mod 3, 1/(p(p+1))}."""
    if l < 0:
        raise DomainError("l must be nonnegative")
    if coefficients not in COEFFICIENTS:
        raise DomainError(f"coefficients must be one of {list(COEFFICIENTS)}")
    c1, c2 = COEFFICIENTS[coefficients]
    P = pi2(prime_limit)
    e = restricted_elementary_sums(_w1_pool(prime_limit), l)
    el, etl = float(e[l].value), e[l].tail_bound
    em, etm = (float(e[l - 1].value), e[l - 1].tail_bound) if l >= 1 else (0.0, 0.0)
    inner = c1 * el + c2 * em
    v = P.value * inner
    tail = P.tail_bound * inner + (P.value + P.tail_bound) * (c1 * etl + c2 * etm)
    return ConstantReport(f"B({l})", _tv(v, tail, prime_limit=prime_limit, l=l),
                          coefficients, {"prime_limit": prime_limit})


def resummation(kmax: int = 8, lmax: int = 8, disc_bound: int = 10**8,
                prime_limit: int = 500_000) -> ConstantReport:
    """(sum_{k<=kmax} A(k)) (sum_{l<=lmax} B(l)) / zeta(2)."""
    As = [A_k(k, disc_bound) for k in range(kmax + 1)]
    Bs = [B_l(l, prime_limit) for l in range(lmax + 1)]
    sa = math.fsum(float(a) for a in As)
    sb = math.fsum(float(b) for b in Bs)
    ta = As[0].value.tail_bound
    tb = math.fsum(b.value.tail_bound for b in Bs)
    v = sa * sb / ZETA2
    return ConstantReport("resummed_lambda", _tv(v, (ta * sb + tb * sa + ta * tb) / ZETA2,
                                                 kmax=kmax, lmax=lmax),
                          "count-true", {"disc_bound": disc_bound, "prime_limit": prime_limit})


@dataclass
class Table1:
    normalization: str
    entries: dict
    proportions: dict
    lam: ConstantReport
    printed: dict = field(default_factory=lambda: dict(TABLE1_PRINTED))

    def rows(self) -> list[dict]:
        return [{"k": k, "l": l, "entry": self.entries[(k, l)].value.value,
                 "tail_bound": self.entries[(k, l)].value.tail_bound,
                 "proportion": self.proportions[(k, l)],
                 "printed_entry": self.printed[(k, l)][0],
                 "printed_proportion": self.printed[(k, l)][1],
                 "normalization": self.normalization, "convention": "29/81"}
                for (k, l) in sorted(self.entries)]


def table1(prime_limit: int = 500_000, disc_bound: int = 10**8,
           normalization: str = "zeta2-squared", size: int = 4) -> Table1:
    """Entries A(k)B(l)/zeta(2) (or /zeta(2)^2); proportions use lambda_as-printed."""
    if normalization not in ("zeta2", "zeta2-squared"):
        raise DomainError(f"unknown normalization {normalization!r}")
    norm = ZETA2 if normalization == "zeta2" else ZETA2**2
    lam = lambda_const("as-printed", prime_limit)
    As = [A_k(k, disc_bound) for k in range(size)]
    Bs = [B_l(l, prime_limit) for l in range(size)]
    entries, props = {}, {}
    for k, a in enumerate(As):
        for l, b in enumerate(Bs):
            av, at, bv, bt = float(a), a.value.tail_bound, float(b), b.value.tail_bound
            v = av * bv / norm
            entries[(k, l)] = ConstantReport(
                f"table1({k},{l})", _tv(v, (at * bv + bt * av + at * bt) / norm, k=k, l=l),
                normalization, {"prime_limit": prime_limit, "disc_bound": disc_bound})
            props[(k, l)] = v / float(lam)
    return Table1(normalization, entries, props, lam)


# ---------------------------------------------------------------------------
# delta, moments


def delta_genus_one(prime_limit: int = 500_000) -> ConstantReport:
    """(29/(81 zeta(2))) Pi2 sum_q q^(1/2)/(q^2+q+1), the sum over all primes."""
    P = pi2(prime_limit)
    q = sieve_primes(prime_limit).astype(np.float64)
    s = neumaier_sum(np.sqrt(q) / (q * q + q + 1.0))
    st = majorant_tail((1.0, 0.5), prime_limit)
    c = 29 / (81 * ZETA2)
    v = c * P.value * s
    tail = c * (P.tail_bound * s + (P.value + P.tail_bound) * st)
    return ConstantReport("delta", _tv(v, tail, prime_limit=prime_limit), "as-displayed",
                          {"prime_limit": prime_limit, "report_only": True})


def s0(r: int, prime_limit: int = 500_000) -> TruncatedValue:
    """(116+3^r)/(324 zeta(2)) prod_{p=1(3)}(1+3^r w_p) prod_{p=2(3)}(1+w_p)."""
    if not 0 <= r <= 8:
        raise BudgetError(f"moment order {r} outside [0, 8]")
    E1 = euler_product(_w1_pool(prime_limit, float(3**r)))
    E2 = pi2(prime_limit)
    c = (116 + 3**r) / (324 * ZETA2)
    v = c * E1.value * E2.value
    rel = (1 + E1.tail_bound / E1.value) * (1 + E2.tail_bound / E2.value) - 1
    return _tv(v, abs(v) * rel, prime_limit=prime_limit, r=r)


def moments_s3(r: int, prime_limit: int = 500_000) -> ConstantReport:
    """mu_r(S3, 3) = 3 zeta(3) S0^(r)."""
    S = s0(r, prime_limit)
    return ConstantReport(f"mu_{r}(S3)", _tv(3 * ZETA3 * S.value, 3 * ZETA3 * S.tail_bound,
                                             **S.truncation),
                          "29/81", {"prime_limit": prime_limit})


def sq_sum(q: int, r: int, prime_limit: int = 500_000, mode: str = "closed",
           bound: int | None = None) -> TruncatedValue:
    """S_q^(r): q^(r(Psi_q - 1)) / D_F^(3/q) summed over the degree-q family.

    q = 2 runs over fundamental discriminants (Psi_2 = omega); q >= 5 over
    cyclic conductors f with multiplicity (q-1)^(s-1) and D_F = f^(q-1).
    Closed mode uses the multiplicative structure of both families.
    """
    if q == 2:
        k, c = 1.5, float(2**r)
        if mode == "direct":
            parts = []
            for blk in discriminant_blocks(bound):
                if len(blk):
                    parts.append(neumaier_sum(2.0 ** (r * (blk.omega - 1))
                                              * blk.absD.astype(np.float64) ** -k))
            # 2^(r omega(D)) <= d(|D|)^r is |D|^eps-small; heuristic tail at eps = 0.25
            return _tv(math.fsum(parts), disc_density_tail(k, bound, c * 8.0**r, 0.25),
                       disc_bound=bound, mode="direct", tail_basis="heuristic")
        pool = PrimePool.all_except([2], lambda ps: c * ps.astype(np.float64) ** -k,
                                    prime_limit, (c, k - 1.0), name="odd primes")
        E = euler_product(pool)
        local2 = 1.0 + c * (4.0**-k + 2.0 * 8.0**-k)
        return _tv((E.value * local2 - 1.0) / c, E.tail_bound * local2 / c,
                   prime_limit=prime_limit, mode="closed")
    if q < 5 or any(q % p == 0 for p in range(2, math.isqrt(q) + 1)):
        raise DomainError(f"q must be 2 or a prime >= 5, got {q}")
    a = 3.0 * (q - 1) / q
    c = float((q - 1) * q**r)
    if mode == "direct":
        fs, ss = cq_conductor_arrays(q, bound)
        w = (q - 1.0) ** (ss - 1) * float(q) ** (r * (ss - 1)) * fs.astype(np.float64) ** -a
        return _tv(neumaier_sum(w), majorant_tail((c**2, a - 1.0), bound),
                   conductor_bound=bound, mode="direct", tail_basis="heuristic")
    pool = PrimePool.congruence(1, q, lambda ps: c * ps.astype(np.float64) ** -a, prime_limit,
                                (c, a - 1.0))
    E = euler_product(pool)
    localq = 1.0 + c * float(q) ** (-2 * a)
    return _tv((E.value * localq - 1.0) / c, E.tail_bound * localq / c,
               prime_limit=prime_limit, mode="closed")


def moments_s3cq(q: int, r: int, prime_limit: int = 500_000,
                 disc_bound: int | None = None) -> ConstantReport:
    """mu_r = S0^(r) S_q^(r) / (S0^(0) S_q^(0)).

    With ``disc_bound`` the S_q sums are also taken directly and a Cauchy test
    compares them against the closed form; a mismatch beyond the tails raises.
    """
    if q == 2 and r > 5:
        raise BudgetError("q = 2 moments are supported up to r = 5")
    num, den = s0(r, prime_limit), s0(0, prime_limit)
    sr, s00 = sq_sum(q, r, prime_limit), sq_sum(q, 0, prime_limit)
    inputs = {"prime_limit": prime_limit, "q": q}
    if disc_bound is not None:
        bound = disc_bound if q == 2 else _iroot(disc_bound, q - 1)
        direct = sq_sum(q, r, prime_limit, "direct", bound)
        gap = abs(direct.value - sr.value)
        if gap > direct.tail_bound + sr.tail_bound + 1e-9 * abs(sr.value):
            raise BudgetError(f"S_{q}^({r}) partial sums fail the Cauchy test (gap {gap:.3g})")
        inputs["direct_check"] = direct.value
        inputs["disc_bound"] = disc_bound
    v = num.value * sr.value / (den.value * s00.value)
    rel = sum(t.tail_bound / abs(t.value) for t in (num, den, sr, s00))
    return ConstantReport(f"mu_{r}(S3xC{q})", _tv(v, abs(v) * rel, q=q, r=r), "29/81", inputs)


def cq_constant(q: int, k: int, l: int, conductor_bound: int = 10**4,
                prime_limit: int = 500_000, coefficients: str = "29/81") -> ConstantReport:
    """alpha_l/zeta(2) times the sum of N_f/D_F^(3/q) over Psi_q(D_F) = k+1."""
    if q < 5 or any(q % p == 0 for p in range(2, math.isqrt(q) + 1)):
        raise DomainError(f"q must be a prime >= 5, got {q}")
    if k < 0:
        raise DomainError("k must be nonnegative")
    alpha = B_l(l, prime_limit, coefficients)
    a = 3.0 * (q - 1) / q
    fs, ss = cq_conductor_arrays(q, conductor_bound)
    sel = ss == k + 1
    mult = float(q - 1) ** k
    s = neumaier_sum(mult * fs[sel].astype(np.float64) ** -a)
    st = mult * conductor_bound ** (1.0 - a) / (a - 1.0)
    av = float(alpha)
    v = av * s / ZETA2
    tail = (alpha.value.tail_bound * s + (av + alpha.value.tail_bound) * st) / ZETA2
    return ConstantReport(f"C_{q}({k},{l})", _tv(v, tail, conductor_bound=conductor_bound,
                                                 disc_sum=s, disc_sum_tail=st, alpha=av),
                          coefficients, {"prime_limit": prime_limit})


# ---------------------------------------------------------------------------
# delta0 and C0


def delta0(d_bound: int = 10**4, prime_limit: int = 500_000,
           mode: str = "exact-residue") -> ConstantReport:
    """sum over d = +-p = 1 mod 4, |d| <= d_bound, of 2^(u(d)-1) C(d)/d^2."""
    terms = []
    for p in sieve_primes(d_bound).tolist():
        if p == 2:
            continue
        d = p if p % 4 == 1 else -p
        scale = 1.0 if d > 0 else 0.5
        terms.append(scale * float(local_density_C(d, prime_limit, mode).value) / (d * d))
    B = float(d_bound)
    # C(d) <= ln|d| + 2 for both modes; sum_{n > B} (ln n + 2)/n^2 <= (ln B + 4)/(B - 1)
    tail = (math.log(B) + 4.0) / (B - 1.0)
    return ConstantReport("delta0", _tv(math.fsum(terms), tail, d_bound=d_bound,
                                        tail_basis="C(d) <= ln|d| + 2"),
                          mode, {"prime_limit": prime_limit, "d_bound": d_bound})


def c0_pure_quartic(prime_limit: int = 500_000, version: str = "proof") -> ConstantReport:
    """6/pi^2 times prod_p (1 + 1/(p^2(p+1))) (proof) or (1 + 1/(p(p^2-1))) (statement)."""
    if version == "proof":
        g, maj = (lambda ps: 1.0 / (ps.astype(np.float64) ** 2 * (ps + 1.0))), (1.0, 2.0)
    elif version == "lemma-statement":
        g, maj = (lambda ps: 1.0 / (ps * (ps.astype(np.float64) ** 2 - 1.0))), (2.0, 2.0)
    else:
        raise DomainError(f"unknown version {version!r}")
    E = euler_product(PrimePool.all_except([], g, prime_limit, maj, name="all primes"))
    c = 6 / math.pi**2
    return ConstantReport("C0", _tv(c * E.value, c * E.tail_bound, prime_limit=prime_limit),
                          version, {"prime_limit": prime_limit})
