"""Compiled loops for enumerating reduced maximal binary cubic forms.

Forms are a x^3 + b x^2 y + c x y^2 + d y^3 under the twisted action
F -> det(g)^-1 F((x, y) g).  Representatives have a > 0.

Negative discriminant: the complex root z of F(x, 1) lies in the open standard
fundamental domain (|Re z| < 1/2, |z| > 1), with the mirror class fixed by
b > 0, or b = 0 and d > 0.  Positive discriminant: the Hessian
H = (P, Q, R) = (b^2 - 3ac, bc - 9ad, c^2 - 3bd) satisfies 0 <= Q <= P <= R,
ties broken by taking the lexicographically least form among the images
under the automorphisms of H.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

SMALL_PRIMES = np.array([2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31], dtype=np.int64)


def _unimodular_small() -> np.ndarray:
    out = []
    for al in (-1, 0, 1):
        for be in (-1, 0, 1):
            for ga in (-1, 0, 1):
                for de in (-1, 0, 1):
                    if al * de - be * ga in (1, -1):
                        out.append((al, be, ga, de))
    return np.array(out, dtype=np.int64)


UNIMODULAR = _unimodular_small()


@njit(cache=True)
def form_disc(a, b, c, d):
    return b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d \
        + 18 * a * b * c * d


@njit(cache=True)
def transform(a, b, c, d, al, be, ga, de):
    """det^-1 F(al x + be y, ga x + de y), coefficients (a', b', c', d')."""
    det = al * de - be * ga
    a2 = a * al * al * al + b * al * al * ga + c * al * ga * ga + d * ga * ga * ga
    d2 = a * be * be * be + b * be * be * de + c * be * de * de + d * de * de * de
    b2 = 3 * a * al * al * be + b * (al * al * de + 2 * al * be * ga) \
        + c * (be * ga * ga + 2 * al * ga * de) + 3 * d * ga * ga * de
    c2 = 3 * a * al * be * be + b * (be * be * ga + 2 * al * be * de) \
        + c * (al * de * de + 2 * be * ga * de) + 3 * d * ga * de * de
    return a2 * det, b2 * det, c2 * det, d2 * det


@njit(cache=True)
def _has_root_mod(a, b, c, d, p):
    if a % p == 0:
        return True
    for x in range(p):
        if (((a * x + b) * x + c) * x + d) % p == 0:
            return True
    return False


@njit(cache=True)
def _real_roots(a, b, c, d, out):
    """Real roots of a t^3 + b t^2 + c t + d (a > 0); returns how many were written."""
    fa, fb, fc, fd = float(a), float(b), float(c), float(d)
    R = 1.0 + max(abs(fb), abs(fc), abs(fd)) / fa
    lo, hi = -R, R
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        v = ((fa * mid + fb) * mid + fc) * mid + fd
        if v < 0.0:
            lo = mid
        else:
            hi = mid
    t = 0.5 * (lo + hi)
    out[0] = t
    # deflate: a t^2 + (b + a t) t' + ...
    q1 = fb + fa * t
    q0 = fc + q1 * t
    disc = q1 * q1 - 4.0 * fa * q0
    if disc < 0.0:
        return 1
    s = math.sqrt(disc)
    out[1] = (-q1 + s) / (2.0 * fa)
    out[2] = (-q1 - s) / (2.0 * fa)
    return 3


@njit(cache=True)
def is_irreducible(a, b, c, d):
    """Exact irreducibility over Q for a != 0."""
    if d == 0:
        return False
    for i in range(SMALL_PRIMES.shape[0]):
        if not _has_root_mod(a, b, c, d, SMALL_PRIMES[i]):
            return True
    roots = np.empty(3, dtype=np.float64)
    n = _real_roots(a, b, c, d, roots)
    for k in range(n):
        for y in range(1, a + 1):
            if a % y != 0:
                continue
            x0 = int(round(roots[k] * y))
            for x in range(x0 - 1, x0 + 2):
                if a * x * x * x + b * x * x * y + c * x * y * y + d * y * y * y == 0:
                    return False
    return True


@njit(cache=True)
def nonmaximal_at(a, b, c, d, p):
    """True iff the cubic ring of F is not maximal at p: F vanishes mod p, or F
    has a multiple root mod p at which it vanishes mod p^2."""
    if a % p == 0 and b % p == 0 and c % p == 0 and d % p == 0:
        return True
    p2 = p * p
    if a % p == 0 and b % p == 0 and a % p2 == 0:
        return True
    for x in range(p):
        fx = ((a * x + b) * x + c) * x + d
        if fx % p == 0 and ((3 * a * x + 2 * b) * x + c) % p == 0 and fx % p2 == 0:
            return True
    return False


@njit(cache=True)
def is_maximal(a, b, c, d, D, spf):
    """Maximality at every p with p^2 | D, factoring |D| through the spf table."""
    n = abs(D)
    while n > 1:
        p = spf[n]
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e >= 2 and nonmaximal_at(a, b, c, d, p):
            return False
    return True


@njit(cache=True)
def _is_canonical(a, b, c, d, P, Q, R, mats):
    for i in range(mats.shape[0]):
        a2, b2, c2, d2 = transform(a, b, c, d, mats[i, 0], mats[i, 1], mats[i, 2], mats[i, 3])
        if a2 < 0:
            a2, b2, c2, d2 = -a2, -b2, -c2, -d2
        if b2 * b2 - 3 * a2 * c2 != P or b2 * c2 - 9 * a2 * d2 != Q or c2 * c2 - 3 * b2 * d2 != R:
            continue
        if a2 < a or (a2 == a and (b2 < b or (b2 == b and (c2 < c or (c2 == c and d2 < d))))):
            return False
    return True


@njit(cache=True)
def _push(buf, n, a, b, c, d, D):
    if n == buf.shape[0]:
        nb = np.empty((2 * buf.shape[0], 5), dtype=np.int64)
        nb[:n] = buf[:n]
        buf = nb
    buf[n, 0] = a
    buf[n, 1] = b
    buf[n, 2] = c
    buf[n, 3] = d
    buf[n, 4] = D
    return buf, n + 1


@njit(cache=True)
def _isqrt(n):
    r = int(math.sqrt(float(n)))
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


@njit(cache=True)
def _ceil_div(x, y):
    return -((-x) // y)


@njit(cache=True)
def enumerate_positive(X, a_lo, a_hi, spf, mats, maximal_only):
    """Reduced irreducible forms with 0 < disc <= X and a_lo <= a < a_hi."""
    buf = np.empty((1024, 5), dtype=np.int64)
    n = 0
    sX = _isqrt(X)
    bmax_base = int(X ** 0.25) + 1
    for a in range(max(a_lo, 1), a_hi):
        # 27 a^2 D <= 4 P^3 <= 4 D^(3/2)
        if 729 * a * a * a * a > 16 * X:
            break
        # D >= P^2 gives P >= 27 a^2 / 4
        pmin = _ceil_div(27 * a * a, 4)
        bmax = (3 * a) // 2 + bmax_base + 1
        for b in range(-bmax, bmax + 1):
            c_lo = _ceil_div(b * b - sX, 3 * a)
            c_hi = (b * b - pmin) // (3 * a)
            for c in range(c_lo, c_hi + 1):
                P = b * b - 3 * a * c
                if P < pmin or P > sX:
                    continue
                d_lo = _ceil_div(b * c - P, 9 * a)
                d_hi = (b * c) // (9 * a)
                for d in range(d_lo, d_hi + 1):
                    Q = b * c - 9 * a * d
                    R = c * c - 3 * b * d
                    if R < P:
                        continue
                    D = (4 * P * R - Q * Q) // 3
                    if D > X:
                        continue
                    if Q == 0 or Q == P or P == R:
                        if not _is_canonical(a, b, c, d, P, Q, R, mats):
                            continue
                    if not is_irreducible(a, b, c, d):
                        continue
                    if maximal_only and not is_maximal(a, b, c, d, D, spf):
                        continue
                    buf, n = _push(buf, n, a, b, c, d, D)
    return buf[:n]


@njit(cache=True)
def enumerate_negative(X, a_lo, a_hi, spf, maximal_only):
    """Reduced irreducible forms with -X <= disc < 0 and a_lo <= a < a_hi."""
    buf = np.empty((1024, 5), dtype=np.int64)
    n = 0
    r4 = (X / 3.0) ** 0.25
    for a in range(max(a_lo, 1), a_hi):
        if 27 * a * a * a * a > 16 * X:
            break
        bmax = int(1.5 * a + r4) + 1
        c_top = int(0.75 * a + r4 + (X / 4.0) ** (1.0 / 3.0) / a ** (1.0 / 3.0)) + 1
        for b in range(0, bmax + 1):
            # c > -a - b^2/a (the |Re z| < 1/2 strip is nonempty)
            c_lo = (-a * a - b * b) // a + 1
            c_alt = int(math.floor(0.5 * a - r4)) - 1
            if c_alt > c_lo:
                c_lo = c_alt
            for c in range(c_lo, c_top + 1):
                P = b * b - 3 * a * c
                beta = 18 * a * b * c - 4 * b * b * b
                rad = 16 * P * P * P + 108 * a * a * X
                if rad < 0:
                    continue
                U = _isqrt(rad)
                den = 54 * a * a
                d_lo = _ceil_div(beta - U, den)
                d_hi = (beta + U) // den
                # strip: -(a-b)^2 - c(a-b) < a d < (a+b)^2 + c(a+b)
                s_lo = (-(a - b) * (a - b) - c * (a - b)) // a + 1
                s_hi = _ceil_div((a + b) * (a + b) + c * (a + b), a) - 1
                if s_lo > d_lo:
                    d_lo = s_lo
                if s_hi < d_hi:
                    d_hi = s_hi
                for d in range(d_lo, d_hi + 1):
                    if b == 0 and d <= 0:
                        continue
                    # |z| > 1
                    if d * d - b * d + a * c - a * a <= 0:
                        continue
                    D = form_disc(a, b, c, d)
                    if D >= 0 or D < -X:
                        continue
                    if not is_irreducible(a, b, c, d):
                        continue
                    if maximal_only and not is_maximal(a, b, c, d, D, spf):
                        continue
                    buf, n = _push(buf, n, a, b, c, d, D)
    return buf[:n]


@njit(cache=True)
def genus_exponents(discs, spf):
    """Exponent of 3 in the genus number for each cubic field discriminant."""
    out = np.empty(discs.shape[0], dtype=np.int64)
    for i in range(discs.shape[0]):
        D = discs[i]
        n = abs(D)
        e = 0
        v3 = 0
        kernel = 1  # squarefree kernel of |D|
        while n > 1:
            p = spf[n]
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            if p == 3:
                v3 = k
            elif k >= 2 and p % 3 == 1:
                e += 1
            if k % 2 == 1:
                kernel *= p
        cyclic = D > 0 and kernel == 1
        if cyclic:
            dmod3 = 1
        else:
            sk = kernel if D > 0 else -kernel
            fd = sk if sk % 4 == 1 else 4 * sk
            dmod3 = fd % 3
        if v3 >= 2 and dmod3 == 1:
            e += 1
        if cyclic:
            e -= 1
        out[i] = e
    return out
