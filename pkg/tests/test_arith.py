import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from genustats.arith import (FactoredInteger, FundamentalDiscriminant, factorize,
                             fundamental_discriminant, kronecker_symbol, nu_p, omega_counts,
                             psi_q, sieve_primes)
from genustats.errors import DomainError


def brute_primes(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, math.isqrt(p) + 1))]


@pytest.mark.parametrize("limit,expected", [
    (10, [2, 3, 5, 7]), (2, [2]), (30, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29])])
def test_sieve_examples(limit, expected):
    assert sieve_primes(limit).tolist() == expected


def test_sieve_matches_trial_division():
    assert sieve_primes(5000).tolist() == brute_primes(5000)


def test_factorize_examples():
    f = factorize(-108)
    assert f.as_dict() == {2: 2, 3: 3} and f.sign == -1
    assert factorize(1).factors == ()
    assert factorize(2000).as_dict() == {2: 4, 5: 3}
    with pytest.raises(DomainError):
        factorize(0)


def test_factored_integer_validates():
    with pytest.raises(DomainError):
        FactoredInteger(12, ((2, 2), (3, 2)))
    with pytest.raises(DomainError):
        FactoredInteger(12, ((3, 1), (2, 2)))


@settings(max_examples=300)
@given(st.integers(min_value=-10**6, max_value=10**6).filter(lambda n: n != 0))
def test_factorize_round_trip(n):
    f = factorize(n)
    prod = 1
    for p, e in f.factors:
        prod *= p**e
    assert f.sign * prod == n
    assert all(p < q for (p, _), (q, _) in zip(f.factors, f.factors[1:]))


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if any(x * x % p == a for x in range(1, p)) else -1


def test_kronecker_examples():
    assert kronecker_symbol(5, 11) == 1
    assert all(kronecker_symbol(a, 1) == 1 for a in range(-20, 21))
    assert kronecker_symbol(-4, 7) == -1


def test_kronecker_matches_legendre():
    for p in brute_primes(500)[1:]:
        for a in range(-30, 31):
            assert kronecker_symbol(a, p) == legendre(a, p)


@settings(max_examples=200)
@given(st.integers(-500, 500), st.integers(-500, 500), st.integers(1, 500), st.integers(1, 500))
def test_kronecker_multiplicative(a, b, m, n):
    assert kronecker_symbol(a * b, n) == kronecker_symbol(a, n) * kronecker_symbol(b, n)
    assert kronecker_symbol(a, m * n) == kronecker_symbol(a, m) * kronecker_symbol(a, n)


def test_fundamental_discriminant_examples():
    assert fundamental_discriminant(12).D == 12
    assert fundamental_discriminant(-1).D == -4
    assert fundamental_discriminant(45).D == 5
    with pytest.raises(DomainError):
        fundamental_discriminant(49)
    with pytest.raises(DomainError):
        FundamentalDiscriminant(1)
    with pytest.raises(DomainError):
        FundamentalDiscriminant(8 * 3 * 3)


@settings(max_examples=200)
@given(st.integers(-10**4, 10**4).filter(lambda m: m != 0), st.integers(1, 30))
def test_fundamental_discriminant_kernel_only(m, k):
    if math.isqrt(abs(m)) ** 2 == abs(m) and m > 0:
        return
    D = fundamental_discriminant(m).D
    assert fundamental_discriminant(k * k * m).D == D
    assert fundamental_discriminant(D).D == D


def test_omega_counts_examples():
    assert tuple(omega_counts(factorize(40))) == (2, 1, 1, 0)
    assert tuple(omega_counts(factorize(1))) == (0, 0, 0, 0)
    assert tuple(omega_counts(factorize(-1323))) == (2, 2, 0, 2)


def test_psi_q_examples():
    assert psi_q(factorize(58), 7) == 1
    assert psi_q(factorize(341), 5) == 2
    assert psi_q(factorize(275), 5) == 2


def test_nu_p_examples():
    assert nu_p(2) == Fraction(3, 7)
    assert nu_p(3) == Fraction(4, 13)
    assert nu_p(7) == Fraction(8, 57)


def test_nu_p_properties():
    ps = brute_primes(2000)
    assert all(0 < nu_p(p) < 1 for p in ps)
    assert abs(float(ps[-1] * nu_p(ps[-1])) - 1) < 1e-3
    prod = Fraction(1)
    for p in ps[:64]:
        prod *= nu_p(p)
    assert isinstance(prod, Fraction)
    assert prod == math.prod(Fraction(p + 1, p * p + p + 1) for p in ps[:64])
