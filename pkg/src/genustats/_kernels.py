"""Compiled inner loops shared by several modules."""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def neumaier_sum(arr):
    s = 0.0
    c = 0.0
    for x in arr:
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


@njit(cache=True)
def factor_segment(lo, hi, primes):
    """Per-integer data for n in [lo, hi): 2-adic valuation, whether the odd part
    is squarefree, number of distinct primes, and the product of nu_p."""
    L = hi - lo
    rem = np.empty(L, dtype=np.int64)
    for i in range(L):
        rem[i] = lo + i
    v2 = np.zeros(L, dtype=np.int8)
    sqf = np.ones(L, dtype=np.bool_)
    omega = np.zeros(L, dtype=np.int16)
    nu = np.ones(L, dtype=np.float64)
    for j in range(primes.shape[0]):
        p = primes[j]
        if p * p >= hi:
            break
        w = (p + 1.0) / (p * p + p + 1.0)
        start = ((lo + p - 1) // p) * p
        for m in range(start, hi, p):
            i = m - lo
            r = rem[i]
            e = 0
            while r % p == 0:
                r //= p
                e += 1
            rem[i] = r
            omega[i] += 1
            nu[i] *= w
            if p == 2:
                v2[i] = e
            elif e >= 2:
                sqf[i] = False
    for i in range(L):
        r = rem[i]
        if r > 1:
            omega[i] += 1
            nu[i] *= (r + 1.0) / (r * r + r + 1.0)
            if r == 2:
                v2[i] = 1
    return v2, sqf, omega, nu


@njit(cache=True)
def kronecker_scalar(a, n):
    if n == 0:
        return 1 if (a == 1 or a == -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v > 0:
        if a % 2 == 0:
            return 0
        r8 = a % 8
        if v % 2 == 1 and (r8 == 3 or r8 == 5):
            result = -result
    a = a % n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            r = n % 8
            if r == 3 or r == 5:
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a = a % n
    return result if n == 1 else 0


@njit(cache=True)
def kronecker_vec(D, arr):
    out = np.empty(arr.shape[0], dtype=np.int64)
    for i in range(arr.shape[0]):
        out[i] = kronecker_scalar(D, arr[i])
    return out
