"""Argument reduction for large accumulated phases.

Times reach ~1e9 atomic units for the larger packets, so phases t/(2n^2)
run into the thousands of radians. Reducing against a three-part split of
2*pi (Cody-Waite) keeps the reduced angle accurate to a few ulp instead of
inheriting the rounding error of a single float 2*pi times the turn count.
"""

from __future__ import annotations

import numpy as np

# 2*pi = _HI + _MID + _LO to ~95 bits; _HI and _MID carry 21 significant
# bits so that k * _HI and k * _MID are exact for |k| < 2**32.
_HI = 6.283184051513672
_MID = 1.2556656656670384e-06
_LO = 2.4893488687586454e-13
TWO_PI = 2.0 * np.pi
_MAX_TURNS = float(2**31)


def reduce_phase(x):
    """Reduce angle(s) ``x`` into [-pi, pi].

    Works on scalars or arrays. Beyond 2**31 full turns the exact-product
    guarantee is lost and the result falls back to ``np.remainder``.
    """
    x = np.asarray(x, dtype=float)
    k = np.rint(x / TWO_PI)
    r = ((x - k * _HI) - k * _MID) - k * _LO
    big = np.abs(k) >= _MAX_TURNS
    if np.any(big):
        r = np.where(big, np.remainder(x + np.pi, TWO_PI) - np.pi, r)
    return r[()] if r.ndim == 0 else r


_SPLIT = 134217729.0  # 2**27 + 1


def _two_prod(a, b):
    """a*b = p + e exactly (Dekker)."""
    p = a * b
    c = _SPLIT * a
    ah = c - (c - a)
    al = a - ah
    c = _SPLIT * b
    bh = c - (c - b)
    bl = b - bh
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def reduce_quotient(num, den):
    """Reduce num/den into [-pi, pi] without losing the division's rounding error.

    A phase like t/(2n^2) of size 1e6 is off by up to ~5e-11 rad once rounded
    to a double. The exact residue num - q*den is recovered with an
    error-free product and added back after the turns have been removed.
    """
    num, den = np.broadcast_arrays(np.asarray(num, dtype=float), np.asarray(den, dtype=float))
    q = num / den
    p, e = _two_prod(q, den)
    with np.errstate(invalid="ignore"):
        tail = ((num - p) - e) / den
    tail = np.where(np.isfinite(tail), tail, 0.0)
    k = np.rint(q / TWO_PI)
    r = (((q - k * _HI) - k * _MID) + tail) - k * _LO
    big = np.abs(k) >= _MAX_TURNS
    if np.any(big):
        r = np.where(big, np.remainder(q + np.pi, TWO_PI) - np.pi, r)
    return r[()] if r.ndim == 0 else r
