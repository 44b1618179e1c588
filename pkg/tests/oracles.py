"""Independent reference computations used by the tests.

Nothing here imports the package: these are brute-force or exact-arithmetic
routes to the same quantities.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

import mpmath as mp

DPS = 50


def weight_terms_mp(s, n_max):
    """Exact-ish terms exp(-s^2) n^2 s^(2(n-1))/(n-1)! for n = 1..n_max."""
    with mp.workdps(DPS):
        s = mp.mpf(s)
        x = s * s
        out = []
        term = mp.exp(-x)  # Poisson(0)
        for n in range(1, n_max + 1):
            if n > 1:
                term = term * x / (n - 1)
            out.append(n * n * term)
        return out


def normalization_sum_mp(s, n_max):
    with mp.workdps(DPS):
        return mp.fsum(weight_terms_mp(s, n_max))


def log_weight_mp(n, s):
    with mp.workdps(DPS):
        s = mp.mpf(s)
        x = s * s
        return -x + 2 * mp.log(n) + (n - 1) * mp.log(x) - mp.loggamma(n) - mp.log((x + 1) ** 2 + x)


def poisson_shift_moment(x: Fraction, j: int) -> Fraction:
    """E[(m+1)^j] for m ~ Poisson(x), via Touchard polynomials (exact for rational x)."""
    # E[m^k] = sum_i S(k, i) x^i with Stirling numbers of the second kind
    def stirling2(k, i):
        return sum((-1) ** (i - r) * comb(i, r) * r**k for r in range(i + 1)) // factorial(i)

    total = Fraction(0)
    for k in range(j + 1):
        raw = sum(stirling2(k, i) * x**i for i in range(k + 1)) if k else Fraction(1)
        total += comb(j, k) * raw
    return total


def exact_moments(s_squared: Fraction):
    """Mean and variance of p_n for rational s^2, in exact arithmetic."""
    norm = poisson_shift_moment(s_squared, 2)
    mean = poisson_shift_moment(s_squared, 3) / norm
    second = poisson_shift_moment(s_squared, 4) / norm
    return mean, second - mean * mean


def brute_mode(s, n_max):
    terms = weight_terms_mp(s, n_max)
    best = max(range(n_max), key=lambda i: (terms[i], -i))
    return best + 1


def manifold_norm_exact(n: int, sin2: Fraction) -> Fraction:
    """sum_{l,m} (2l+1)!/((l+m)!(l-m)!) a^(l-m) (1-a)^(l+m) with a = sin^2(theta/2)."""
    cos2 = 1 - sin2
    total = Fraction(0)
    for l in range(n):
        for m in range(-l, l + 1):
            coef = Fraction(factorial(2 * l + 1), factorial(l + m) * factorial(l - m))
            total += coef * sin2 ** (l - m) * cos2 ** (l + m)
    return total


def autocorr_mp(ns, weights, t):
    """|sum p_n exp(i t / 2n^2)|^2 in extended precision."""
    with mp.workdps(DPS):
        t = mp.mpf(float(t))
        z = mp.fsum(mp.mpf(float(w)) * mp.expj(t / (2 * mp.mpf(int(n)) ** 2)) for n, w in zip(ns, weights))
        return abs(z) ** 2
