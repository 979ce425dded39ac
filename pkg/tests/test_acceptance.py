"""Acceptance criteria 1-10, each at its stated tolerance.

Every test records one PASS/FAIL line (shown in the pytest summary) and then
asserts, so a failing criterion is visible both ways.  Criteria that cannot
be met are computed faithfully and left failing.
"""

import math
import time
from collections import Counter

import numpy as np

from genustats.arith import factorize
from genustats.constants import (A_k, B_l, MOMENTS_S3_PRINTED, TABLE1_PRINTED, ZETA2, ZETA3,
                                 c0_pure_quartic, genus_one_density, lambda_const, moments_s3,
                                 table1)
from genustats.cubic_enum import (brute_force_cubic_fields, cubic_discriminants,
                                  cubic_genus_exponents)
from genustats.families import (count_s3c2, pure_quartic_A_counts, pure_quartic_family,
                                split_ideal_count)
from genustats.genus import (cubic_invariants, d4_genus_bound_check, genus_cubic,
                             genus_quadratic, genus_sextic_compositum, local_density_C)
from genustats.symfun import (PrimePool, disc_nu_weighted_sum, disc_zeta_sum,
                              odd_zeta_product, restricted_elementary_sums, w_standard,
                              w_standard_exact, weighted_disc_sum)

P = 500_000


def rel(a, b):
    return abs(a - b) / abs(b)


def test_criterion_1_genus_one_density(verdict):
    t = time.perf_counter()
    v = float(genus_one_density(P))
    dt = time.perf_counter() - t
    ok = abs(v - 0.9623) <= 5e-4 and dt < 1
    assert verdict(1, ok, f"density={v:.7f} target 0.9623+-0.0005 time={dt:.2f}s")


def test_criterion_2_moments_s3(verdict):
    t = time.perf_counter()
    vals = [float(moments_s3(r, P)) for r in range(6)]
    dt = time.perf_counter() - t
    errs = [rel(v, m) for v, m in zip(vals, MOMENTS_S3_PRINTED)]
    ok = max(errs) <= 5e-3 and dt < 10
    assert verdict(2, ok, "mu=" + ",".join(f"{v:.6f}" for v in vals)
                   + f" max rel err={max(errs):.2e} time={dt:.2f}s")


def test_criterion_3_table1_anchor(verdict):
    t = time.perf_counter()
    tab = table1(P, 10**8, "zeta2-squared")
    dt = time.perf_counter() - t
    cell = float(tab.entries[(0, 0)])
    prop = tab.proportions[(0, 0)]
    ratio = float(A_k(1, 10**8)) / float(A_k(0, 10**8))
    want_ratio = TABLE1_PRINTED[(1, 0)][0] / TABLE1_PRINTED[(0, 0)][0]
    parts = [rel(cell, 0.0856846) <= 0.01, rel(prop, 0.451847) <= 0.01,
             rel(ratio, want_ratio) <= 0.01, dt < 300]
    assert verdict(3, all(parts), f"cell={cell:.7f} ({parts[0]}) proportion={prop:.6f} "
                   f"({parts[1]}) A1/A0={ratio:.4f} vs {want_ratio:.4f} ({parts[2]}) "
                   f"time={dt:.1f}s")


def test_criterion_4_resummation(verdict):
    t = time.perf_counter()
    sa = math.fsum(float(A_k(k, 10**8)) for k in range(9))
    sb = math.fsum(float(B_l(l, P)) for l in range(9))
    lam = float(lambda_const("as-printed", P))
    lam_true = float(lambda_const("count-true", P))
    v = sa * sb / ZETA2
    dt = time.perf_counter() - t
    ok = rel(v, lam) <= 5e-3 and dt < 300
    assert verdict(4, ok, f"sumA*sumB/zeta2={v:.5f} lambda_as_printed={lam:.5f} "
                   f"rel err={rel(v, lam):.3f} (count-true lambda={lam_true:.5f})")


def test_criterion_5_disc_sums(verdict):
    t = time.perf_counter()
    B = 10**7
    lines, ok = [], True
    for k in (1.5, 2.0, 3.0):
        direct = disc_zeta_sum(k, mode="direct", bound=B)
        ct = disc_zeta_sum(k, "count-true")
        ap = disc_zeta_sum(k, "as-printed")
        gap = abs(ct.value - direct.value)
        ok &= gap <= direct.tail_bound + ct.tail_bound
        if k == 2.0:
            ok &= direct.tail_bound <= 1e-5 and gap <= 1e-5
        # truth = direct + leading tail (fundamental discriminants have density 6/pi^2)
        est = 6 / math.pi**2 * B ** (1 - k) / (k - 1)
        resid = direct.value + est - ap.value - odd_zeta_product(k).value * 8.0**-k
        ok &= abs(resid) <= 1e-6
        lines.append(f"k={k}: |ct-direct|={gap:.2e}<=tail {direct.tail_bound:.1e}, "
                     f"as-printed residual={resid:.1e}")
    dt = time.perf_counter() - t
    ok &= dt < 120
    assert verdict(5, bool(ok), "; ".join(lines) + f" time={dt:.1f}s")


def test_criterion_6_cubic_enumeration(verdict):
    t = time.perf_counter()
    fast = cubic_discriminants(5000).tolist()
    slow = [r.disc for r in brute_force_cubic_fields(5000)]
    # the counting function only changes at |disc| values, so checking every
    # breakpoint covers every X <= 5000
    points = sorted({abs(d) for d in fast + slow} | {1, 22, 5000})
    fc, sc = Counter(fast), Counter(slow)
    equal = all(Counter({d: n for d, n in fc.items() if abs(d) <= X})
                == Counter({d: n for d, n in sc.items() if abs(d) <= X}) for X in points)
    direct_small = all(Counter(cubic_discriminants(X).tolist()) ==
                       Counter(r.disc for r in brute_force_cubic_fields(X))
                       for X in (23, 108, 500))
    N = cubic_discriminants(10**6).size
    ratio = N * 3 * ZETA3 / 10**6
    e = cubic_genus_exponents(cubic_discriminants(10**7))
    frac = float(np.count_nonzero(e == 0) / e.size)
    dt = time.perf_counter() - t
    parts = [equal and direct_small, 0.95 <= ratio <= 1.05, abs(frac - 0.9623) <= 0.03,
             dt < 1200]
    assert verdict(6, all(parts), f"oracle equal X<=5000 ({parts[0]}, {len(fast)} fields) "
                   f"N(1e6)={N} ratio={ratio:.4f} ({parts[1]}) genus-one fraction(1e7)="
                   f"{frac:.5f} ({parts[2]}) time={dt:.1f}s")


def test_criterion_7_pure_quartic(verdict):
    t = time.perf_counter()
    a10 = pure_quartic_A_counts(10)[0]
    b2000 = pure_quartic_family(2000).B_count
    dens = pure_quartic_A_counts(10**7)[0] / 10**7
    proof = float(c0_pure_quartic(P, "proof"))
    stmt = float(c0_pure_quartic(P, "lemma-statement"))
    fams = [pure_quartic_family(X) for X in (10**6, 10**9, 10**12)]
    fracs = {a: [f.B_histogram.get(a, 0) / f.B_count for f in fams] for a in (0, 1, 2)}
    mono = {a: v[0] > v[1] > v[2] for a, v in fracs.items()}
    dt = time.perf_counter() - t
    parts = [a10 == 7, b2000 == 1, abs(dens - proof) <= 2e-3, abs(dens - stmt) > 2e-3,
             all(mono.values()), dt < 300]
    detail = (f"A(10)={a10} B(2000)={b2000} A(1e7)/1e7={dens:.5f} C0 proof={proof:.5f} "
              f"statement={stmt:.5f} decreasing fractions "
              + " ".join(f"2^{a}:{'/'.join(f'{x:.4f}' for x in v)}({mono[a]})"
                         for a, v in fracs.items()) + f" time={dt:.1f}s")
    assert verdict(7, all(parts), detail)


def test_criterion_8_split_ideals(verdict):
    t = time.perf_counter()
    X = 10**7
    r1 = split_ideal_count(-1, X) / X
    r5 = split_ideal_count(5, X) / X
    c1 = float(local_density_C(-1, P))
    c5 = float(local_density_C(5, P))
    s10, s30 = split_ideal_count(-1, 10), split_ideal_count(-1, 30)
    dt = time.perf_counter() - t
    parts = [abs(r1 - c1) <= 0.02, abs(r5 - c5) <= 0.02, s10 == 3, s30 == 7, dt < 120]
    assert verdict(8, all(parts), f"d=-1: {r1:.5f} vs C={c1:.5f} ({parts[0]}); d=5: {r5:.5f} "
                   f"vs C={c5:.5f} ({parts[1]}); (-1,10)={s10} ({parts[2]}); (-1,30)={s30} "
                   f"expected 7 ({parts[3]}) time={dt:.1f}s")


def test_criterion_9_s3c2_count(verdict):
    t = time.perf_counter()
    S, hist = count_s3c2(10**12)
    lam = float(lambda_const("as-printed", P))
    v = S / 10**6
    prop = hist.proportion((0, 0))
    dt = time.perf_counter() - t
    parts = [rel(v, lam) <= 0.10, rel(prop, 0.451847) <= 0.15, dt < 1800]
    assert verdict(9, all(parts), f"S(1e12)/1e6={v:.5f} vs lambda={lam:.5f} rel={rel(v, lam):.3f} "
                   f"({parts[0]}); (0,0) proportion={prop:.4f} vs 0.451847 ({parts[1]}) "
                   f"time={dt:.1f}s")


def _literal_examples():
    """(label, computed, literal, tolerance) for the quoted example values that are
    checked against independent computation in the unit suites."""
    pool = PrimePool.congruence(1, 3, w_standard, P, (1.0, 1.0))
    e1 = float(restricted_elementary_sums(pool, 1)[1].value)
    nu_ap = disc_nu_weighted_sum(1.5, "as-printed").value
    w1 = weighted_disc_sum(1.5, lambda F: (1 - float(F.nu_product())) if F.omega == 1 else 0.0,
                           8).value
    return [
        ("e1 over p=1 mod 3", e1, 0.02986, 5e-5),
        ("nu-sum as-printed k=3/2", nu_ap, 0.19318, 5e-5),
        ("[omega=1] weighted sum, |D|<=8", w1, 0.327308, 5e-6),
        ("count_s3c2(33855)", count_s3c2(33855)[0], 0, 0),
        ("split_ideal_count(-1, 30)", split_ideal_count(-1, 30), 7, 0),
        ("lambda count-true", float(lambda_const("count-true", P)), 0.1978, 5e-4),
        ("C(-1) exact-residue", float(local_density_C(-1, P)), 0.2900, 5e-4),
        ("sqrt(2)/7", math.sqrt(2) / 7, 0.202006, 5e-6),
        ("sqrt(3)/13", math.sqrt(3) / 13, 0.133270, 5e-6),
        ("11^-2.4", 11**-2.4, 0.003162, 5e-6),
        ("sum of B(l)", math.fsum(float(B_l(l, P)) for l in range(9)), 0.4559, 5e-4),
        ("disc_zeta_sum k=2 count-true", disc_zeta_sum(2, "count-true").value, 0.329840, 5e-6),
        ("disc_zeta_sum k=2 as-printed", disc_zeta_sum(2, "as-printed").value, 0.310842, 5e-6),
        ("lambda as-printed", float(lambda_const("as-printed", P)), 0.1896, 5e-4),
        ("B(0)", float(B_l(0, P)), 0.4389, 5e-5),
        ("B(1)", float(B_l(1, P)), 0.0169, 5e-5),
        ("C0 proof", float(c0_pure_quartic(P)), 0.6843, 5e-5),
        ("A(10)", pure_quartic_A_counts(10)[0], 7, 0),
        ("B(2000)", pure_quartic_family(2000).B_count, 1, 0),
    ]


def test_criterion_10_examples_and_properties(verdict):
    t = time.perf_counter()
    misses = [f"{name}: computed {v:.6g} vs quoted {lit}" for name, v, lit, tol in
              _literal_examples() if abs(v - lit) > tol]
    # Newton identities against brute-force symmetric sums on a finite pool
    from itertools import combinations
    from fractions import Fraction
    pool = PrimePool.congruence(1, 3, w_standard, 100, None, w_standard_exact)
    e = restricted_elementary_sums(pool, 4, exact=True)
    ws = pool.exact_weights()
    newton = all(e[l].value == sum((math.prod(c, start=Fraction(1))
                                    for c in combinations(ws, l)), Fraction(0))
                 for l in range(5))
    mult = all(genus_sextic_compositum(cubic_invariants(D), F).value
               == genus_cubic(cubic_invariants(D)).value * genus_quadratic(F).value
               for D in cubic_discriminants(2000).tolist() for F in (-3, -4, 5, -7, 8, -8, 12)
               if D % F)
    interval = all([w for w in range(60) if d4_genus_bound_check(a, w)]
                   == list(range(a // 2, a + 3)) for a in range(40))
    dt = time.perf_counter() - t
    ok = not misses and newton and mult and interval and dt < 60
    detail = (f"newton={newton} multiplicativity={mult} lemma-interval={interval} "
              f"quoted-example mismatches={len(misses)}"
              + ("" if not misses else " [" + "; ".join(misses) + "]") + f" time={dt:.1f}s")
    assert verdict(10, ok, detail)
