import math
from collections import Counter

import numpy as np
import pytest

from genustats import config
from genustats.cubic_enum import (BinaryCubicForm, brute_force_cubic_fields, cubic_discriminants,
                                  cubic_forms, enumerate_cubic_fields, is_maximal_at_p,
                                  read_cache, write_cache)
from genustats.errors import BudgetError, DomainError
from genustats.families import enumerate_cq_conductors
from genustats.genus import cubic_invariants


def discs(records):
    return Counter(r.disc for r in records)


def test_smallest_field():
    recs = list(enumerate_cubic_fields(23))
    assert [r.disc for r in recs] == [-23]
    assert [r.disc for r in brute_force_cubic_fields(23)] == [-23]
    assert brute_force_cubic_fields(22) == []
    with pytest.raises(DomainError):
        list(enumerate_cubic_fields(22))


def test_x108_contains_known_fields():
    d = discs(enumerate_cubic_fields(108))
    assert d[-108] == 1 and d[49] == 1 and d[81] == 1


@pytest.mark.parametrize("X", [100, 300, 1000, 2000])
def test_oracle_equivalence(X):
    assert discs(enumerate_cubic_fields(X)) == discs(brute_force_cubic_fields(X))


def test_count_near_leading_term():
    N = cubic_discriminants(10**6).size
    assert N == 237017
    ratio = N * 3 * 1.2020569031595942 / 10**6
    # the X^(5/6) secondary term is still about 15% at this size
    assert 0.80 < ratio < 0.90


def test_disc_shape_and_invariants():
    for D in cubic_discriminants(10**5).tolist():
        assert D % 4 in (0, 1)
        inv = cubic_invariants(D)
        core = abs(D) // inv.f**2
        assert core % 9 == 0 or not inv.three_totally_ramified
        assert inv.is_cyclic == (D > 0 and math.isqrt(D) ** 2 == D)


def test_cyclic_records_match_conductors():
    X = 10**6
    d = cubic_discriminants(X)
    cyc = Counter(int(math.isqrt(int(D))) for D in d.tolist()
                  if D > 0 and math.isqrt(int(D)) ** 2 == D)
    cond = Counter()
    for rec in enumerate_cq_conductors(3, X):
        cond[rec.f] += rec.multiplicity
    assert cyc == cond
    for f in (7, 9, 13, 19):
        assert cyc[f] == 1
    # two prime factors: (3-1)^(2-1) fields share the conductor
    assert cyc[63] == 2 and cyc[91] == 2


def test_is_maximal_examples():
    f = BinaryCubicForm(1, -1, -2, 1)
    assert f.disc == 49
    assert is_maximal_at_p(f, 7)
    assert is_maximal_at_p(BinaryCubicForm(1, 0, -1, 1), 5)
    for p in (2, 3, 5, 7):
        scaled = BinaryCubicForm(1, 0, 0, 2 * p**3)
        assert not is_maximal_at_p(scaled, p)
        base = BinaryCubicForm(1, 0, 0, 2)
        assert scaled.disc == base.disc * p**6


def test_form_validation():
    with pytest.raises(DomainError):
        BinaryCubicForm(2, 4, 6, 8)
    with pytest.raises(DomainError):
        BinaryCubicForm(1, 0, -1, 0)
    with pytest.raises(DomainError):
        BinaryCubicForm(1, -3, 3, -1)


def test_partition_independence():
    a = cubic_forms(50000, partitions=1)
    b = cubic_forms(50000, partitions=7)
    assert np.array_equal(a, b)


def test_cache_round_trip(tmp_path):
    path = str(tmp_path / "c.bin")
    d1 = cubic_discriminants(20000, cache=path)
    X, stored = read_cache(path)
    assert X == 20000 and np.array_equal(stored, d1)
    assert np.array_equal(cubic_discriminants(5000, cache=path), cubic_discriminants(5000))
    bad = tmp_path / "bad.bin"
    bad.write_bytes(b"XXXX" + bytes(12))
    with pytest.raises(DomainError):
        read_cache(str(bad))


def test_budgets():
    with pytest.raises(BudgetError):
        cubic_forms(config.CUBIC_X_MAX + 1)
    with pytest.raises(BudgetError):
        brute_force_cubic_fields(config.ORACLE_X_MAX + 1)
