import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from genustats.arith import factorize
from genustats.constants import c0_pure_quartic
from genustats.cubic_enum import brute_force_cubic_fields, cubic_discriminants, cubic_genus_exponents
from genustats.errors import BudgetError, DomainError
from genustats.families import (MomentAccumulator, count_eta, count_s3c2,
                                cyclic_field_count_oracle, enumerate_cq_conductors,
                                moment_accumulate, pure_quartic_A_counts, pure_quartic_family,
                                pure_quartic_members, quadratic_discriminants,
                                split_ideal_count, split_ideal_count_oracle)
from genustats.genus import GenusNumber, cubic_invariants, genus_cubic, pure_quartic_disc

from oracles import fundamental_upto, prime_divisors


def test_quadratic_examples():
    assert [F.D for F in quadratic_discriminants(8)] == [-3, -4, 5, -7, -8, 8]
    assert [F.D for F in quadratic_discriminants(3)] == [-3]
    assert [F.D for F in quadratic_discriminants(12)][-2:] == [-11, 12]


def test_quadratic_matches_definition():
    got = [F.D for F in quadratic_discriminants(100)]
    assert sorted(got) == sorted(fundamental_upto(100))
    counts = [sum(1 for _ in quadratic_discriminants(X)) for X in (10, 100, 1000, 10000)]
    assert counts == sorted(set(counts))


def brute_pairs(X, divisible):
    """(K, F) pairs from the polynomial-search oracle and the definition scan."""
    Ymax = math.isqrt(X // 27)
    cubics = [r for r in brute_force_cubic_fields(max(Ymax, 23))
              if not r.invariants.is_cyclic and abs(r.disc) <= Ymax]
    hist = Counter()
    for F in fundamental_upto(round(X ** (1 / 3)) + 1):
        for r in cubics:
            if r.disc**2 * abs(F) ** 3 > X or (r.disc % F == 0) != divisible:
                continue
            hist[(len(prime_divisors(F)) - 1, genus_cubic(r.invariants).exponent(3))] += 1
    return hist


def test_s3c2_against_brute_force():
    X = 1458000
    total, hist = count_s3c2(X)
    assert hist.counts == dict(brute_pairs(X, False))
    assert total == hist.total == sum(hist.counts.values())
    assert all(k >= 0 and l >= 0 for k, l in hist.counts)
    # the pair (disc -108, D_F = 5) sits at exactly this bound with genus key (0, 0)
    assert 108**2 * 5**3 == X and hist.counts[(0, 0)] > count_s3c2(X - 1)[1].counts[(0, 0)]


def test_s3c2_smallest_pair():
    # the smallest weight is D_K = -23 with D_F = -3: 23^2 * 27 = 14283
    assert count_s3c2(14282)[0] == 0
    assert count_s3c2(14283)[0] == 1
    assert count_s3c2(33856)[0] == count_s3c2(33855)[0] + 1


def test_eta_examples():
    assert count_eta(10**4) == 0
    assert count_eta(746496) >= 1
    assert count_eta(746496) == sum(brute_pairs(746496, True).values())
    ratios = [count_eta(X) / count_s3c2(X)[0] for X in (10**10, 10**11, 10**12)]
    assert ratios[0] > ratios[1] > ratios[2]


def test_cq_examples():
    recs = list(enumerate_cq_conductors(5, 11**4))
    assert [(r.f, r.multiplicity, r.disc) for r in recs] == [(11, 1, 11**4)]
    assert {r.f: r.multiplicity for r in enumerate_cq_conductors(5, 341**4)}[341] == 4
    assert cyclic_field_count_oracle(5, 341) == 4
    assert {r.f: r.multiplicity for r in enumerate_cq_conductors(3, 81)}[9] == 1
    with pytest.raises(DomainError):
        list(enumerate_cq_conductors(4, 10**4))


@pytest.mark.parametrize("q,fmax", [(3, 600), (5, 2000), (7, 1500)])
def test_cq_multiplicity_oracle_all_f(q, fmax):
    mult = {r.f: r.multiplicity for r in enumerate_cq_conductors(q, conductor_bound=fmax)}
    for f in range(2, fmax + 1):
        assert cyclic_field_count_oracle(q, f) == mult.get(f, 0), f


def test_cq_multiplicity_oracle_q5_admissible():
    for r in enumerate_cq_conductors(5, conductor_bound=10**4):
        assert cyclic_field_count_oracle(5, r.f) == r.multiplicity


def test_pure_quartic_examples():
    assert pure_quartic_A_counts(10)[0] == 7
    assert pure_quartic_members(10).tolist() == [2, 3, 5, 6, 7, 8, 10]
    assert pure_quartic_family(2000).B_count == 1
    assert pure_quartic_family(1999).B_count == 0


def test_pure_quartic_classes_and_decomposition():
    members = set(pure_quartic_members(10**5).tolist())
    for Y in (10, 100, 1000, 10**5):
        A, a1, a2, a3 = pure_quartic_A_counts(Y)
        assert A == a1 + a2 + a3
    for n in range(2, 10**5 + 1):
        f = factorize(n)
        assert (n in members) == all(e in (1, 3) for _, e in f.factors)
        if n in members:
            reps = [(b, c) for c in range(1, round(n ** (1 / 3)) + 2) if n % c**3 == 0
                    for b in [n // c**3]
                    if math.gcd(b, c) == 1 and all(e == 1 for _, e in factorize(b).factors)
                    and all(e == 1 for _, e in factorize(c).factors)]
            assert len(reps) == 1


def test_pure_quartic_b_count_brute_force():
    X = 10**9
    fam = pure_quartic_family(X)
    rad = [a for a in pure_quartic_members(round((X / 4) ** (1 / 3)) + 1).tolist()
           if abs(pure_quartic_disc(a)) <= X]
    assert fam.B_count == len(rad) == sum(fam.B_histogram.values())


def test_split_ideal_examples():
    assert split_ideal_count(-1, 10) == 3
    # 1 plus two ideals each for n = 5, 13, 17, 29
    assert split_ideal_count(-1, 30) == 9
    assert split_ideal_count_oracle(-1, 30) == 9
    assert split_ideal_count(-1, 28) == 7


@pytest.mark.parametrize("d", [-1, 5, -3, 2, -7])
def test_split_ideal_oracle(d):
    prev = 0
    for X in (1, 10, 100, 500, 1000):
        v = split_ideal_count(d, X)
        assert v == split_ideal_count_oracle(d, X)
        assert v >= prev
        prev = v


def test_moment_examples():
    assert moment_accumulate([1, 1, 3], 2) == (11, 3)
    assert moment_accumulate([GenusNumber.of({3: 1}), 1, 9], 0) == (3, 3)
    with pytest.raises(DomainError):
        moment_accumulate([1], 9)
    acc = MomentAccumulator(8)
    with pytest.raises(BudgetError):
        acc.add(2**16)


@settings(max_examples=100)
@given(st.lists(st.integers(1, 10**4), max_size=30), st.lists(st.integers(1, 10**4), max_size=30),
       st.integers(0, 8))
def test_moment_merge_commutes(xs, ys, r):
    a, b = MomentAccumulator(r), MomentAccumulator(r)
    for x in xs:
        a.add(x)
    for y in ys:
        b.add(y)
    m1, m2 = a.merge(b), b.merge(a)
    assert (m1.total, m1.count) == (m2.total, m2.count) == moment_accumulate(xs + ys, r)


def test_cubic_mean_genus():
    e = cubic_genus_exponents(cubic_discriminants(10**6))
    total, count = moment_accumulate((3**int(x) for x in e), 1)
    assert 1.0 <= total / count <= 1.2
