"""Saddle-point evaluation of the Poisson log-pmf.

The textbook form ``k*log(lam) - lgamma(k+1) - lam`` subtracts numbers of
size ~k*log(k) to produce a result of size ~1, losing about 1e-12 absolute
accuracy for k near 1000. Writing the log-pmf as
``-stirlerr(k) - bd0(k, lam) - log(2*pi*k)/2`` keeps every piece small
(Loader, "Fast and accurate computation of binomial probabilities", 2000).
"""

from __future__ import annotations

import math

import numpy as np

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

# stirlerr(n) = lgamma(n+1) - (n+1/2) log n + n - log sqrt(2 pi), n = 0..15
_STIRLERR_SMALL = np.array(
    [math.nan]
    + [math.lgamma(n + 1) - (n + 0.5) * math.log(n) + n - _LOG_SQRT_2PI for n in range(1, 16)]
)

_S0 = 1.0 / 12
_S1 = 1.0 / 360
_S2 = 1.0 / 1260
_S3 = 1.0 / 1680
_S4 = 1.0 / 1188


def stirlerr(n):
    """Error of Stirling's approximation to log(n!) for integer n >= 1."""
    n = np.asarray(n, dtype=float)
    nn = n * n
    series = np.where(
        n > 500,
        (_S0 - _S1 / nn) / n,
        np.where(
            n > 80,
            (_S0 - (_S1 - _S2 / nn) / nn) / n,
            np.where(
                n > 35,
                (_S0 - (_S1 - (_S2 - _S3 / nn) / nn) / nn) / n,
                (_S0 - (_S1 - (_S2 - (_S3 - _S4 / nn) / nn) / nn) / nn) / n,
            ),
        ),
    )
    small = n <= 15
    if np.any(small):
        idx = np.where(small, n, 0).astype(int)
        series = np.where(small, _STIRLERR_SMALL[idx], series)
    return series


def bd0(x, m):
    """Deviance term x*log(x/m) + m - x, accurate when x is close to m."""
    x = np.asarray(x, dtype=float)
    m = np.broadcast_to(np.asarray(m, dtype=float), x.shape)
    d = x - m
    near = np.abs(d) < 0.1 * (x + m)
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = x * np.log(x / m) + m - x
    direct = np.where(x == 0, m, direct)
    if not np.any(near):
        return direct

    v = np.where(near, d / (x + m), 0.0)
    total = d * v
    ej = 2.0 * x * v
    v2 = v * v
    for j in range(1, 1000):
        ej = ej * v2
        nxt = total + ej / (2 * j + 1)
        if np.array_equal(nxt, total):
            break
        total = nxt
    return np.where(near, total, direct)


def poisson_logpmf(k, lam):
    """log(lam**k * exp(-lam) / k!) for integer k >= 0 and lam > 0."""
    k = np.asarray(k, dtype=float)
    kk = np.where(k > 0, k, 1.0)
    out = -stirlerr(kk) - bd0(kk, lam) - (_LOG_SQRT_2PI + 0.5 * np.log(kk))
    out = np.where(k > 0, out, -lam)
    return out[()] if out.ndim == 0 else out
