"""Weight distribution of a temporally stable state over principal quantum numbers.

The normalized probability of manifold n is

    p_n = exp(-s^2) n^2 s^(2(n-1)) / ((n-1)! [(s^2+1)^2 + s^2])

which for s = 20 spans well over a thousand orders of magnitude across the
support, so everything here lives in log-space.
"""

from __future__ import annotations

import csv
import math
import numbers
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np
from scipy.special import logsumexp

from ._poisson import poisson_logpmf
from .angular import OmegaBar

__all__ = [
    "PacketParams",
    "CoefficientTable",
    "Moments",
    "DEFAULT_THRESHOLD",
    "norm_factor",
    "log_norm_factor",
    "log_weight",
    "log_normalization_sum",
    "weight_table",
    "moments",
    "significant_count",
]

DEFAULT_THRESHOLD = 1e-100
DEFAULT_CUTOFF = math.exp(-100.0)


@dataclass(frozen=True)
class PacketParams:
    """Continuous labels (s, gamma, omega_bar) of a temporally stable state."""

    s: float
    gamma: float = 0.0
    omega_bar: OmegaBar = field(default_factory=OmegaBar)

    def __post_init__(self):
        if not self.s >= 0:
            raise ValueError(f"s must be >= 0, got {self.s}")
        object.__setattr__(self, "omega_bar", OmegaBar.make(*self.omega_bar))


@dataclass(frozen=True, eq=False)
class CoefficientTable:
    """Truncated, normalized weights p_n for n in [n_lo, n_hi].

    ``s`` is None for tables assembled by hand with :meth:`from_weights`.
    """

    s: float | None
    n_lo: int
    n_hi: int
    log_weights: np.ndarray
    log_norm_factor: float
    threshold: float

    def __post_init__(self):
        lw = np.asarray(self.log_weights, dtype=float)
        lw.setflags(write=False)
        object.__setattr__(self, "log_weights", lw)
        if self.n_lo < 1 or self.n_hi < self.n_lo:
            raise ValueError(f"invalid window [{self.n_lo}, {self.n_hi}]")
        if lw.shape != (self.n_hi - self.n_lo + 1,):
            raise ValueError("log_weights length does not match the window")
        if not np.all(np.isfinite(lw)):
            raise ValueError("log_weights must be finite")

    @classmethod
    def from_weights(cls, n_lo: int, weights) -> "CoefficientTable":
        """Build a table from explicit nonnegative weights on consecutive n.

        Weights are renormalized to sum to one; zero weights are not allowed
        because they have no finite logarithm.
        """
        w = np.asarray(weights, dtype=float)
        if w.ndim != 1 or w.size == 0 or np.any(w <= 0):
            raise ValueError("weights must be a nonempty 1-d array of positive numbers")
        lw = np.log(w)
        lw = lw - logsumexp(lw)
        return cls(None, int(n_lo), int(n_lo) + w.size - 1, lw, 0.0, 0.0)

    @property
    def n(self) -> np.ndarray:
        return np.arange(self.n_lo, self.n_hi + 1)

    @property
    def weights(self) -> np.ndarray:
        return np.exp(self.log_weights)

    @property
    def center(self) -> int:
        """Principal quantum number whose Kepler period sets the time scale.

        round(s^2) for tables built from s (at least 1), otherwise the mode.
        """
        if self.s is None:
            return self.n_lo + int(np.argmax(self.log_weights))
        return max(1, round(self.s * self.s))

    def __len__(self) -> int:
        return self.n_hi - self.n_lo + 1

    def write_csv(self, fh: TextIO, comment: str | None = None) -> None:
        """Write columns n, log_weight, weight."""
        if comment is not None:
            fh.write(f"# {comment}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["n", "log_weight", "weight"])
        for n, lw in zip(self.n, self.log_weights):
            writer.writerow([int(n), repr(float(lw)), repr(float(math.exp(lw)))])


@dataclass(frozen=True)
class Moments:
    mean: float
    variance: float
    argmax: int
    asymptotic_variance: float


def _check_s(s, strict=False):
    if not isinstance(s, numbers.Real) or isinstance(s, bool):
        raise TypeError(f"s must be a real number, got {s!r}")
    if strict and not s > 0:
        raise ValueError(f"s must be > 0, got {s}")
    if not s >= 0:
        raise ValueError(f"s must be >= 0, got {s}")
    return float(s)


def norm_factor(s: float) -> float:
    """Squared norm (s^2+1)^2 + s^2 of the unnormalized state."""
    s = _check_s(s)
    x = s * s
    return (x + 1.0) ** 2 + x


def log_norm_factor(s: float) -> float:
    s = _check_s(s)
    x = s * s
    # for huge s, (x+1)^2 overflows; factor out x^2
    if x > 1e100:
        return 2.0 * math.log(x) + math.log1p((3.0 * x + 1.0) / (x * x))
    return math.log((x + 1.0) ** 2 + x)


def _log_terms(n, s):
    # log of exp(-s^2) n^2 s^(2(n-1)) / (n-1)!, i.e. 2 log n + log Poisson(n-1; s^2)
    n = np.asarray(n)
    return 2.0 * np.log(n) + poisson_logpmf(n - 1, s * s)


def log_weight(n, s: float):
    """ln p_n, evaluated without forming s^(2(n-1)) or (n-1)!.

    Accepts a scalar or an array of integers ``n >= 1``.
    """
    s = _check_s(s, strict=True)
    n_arr = np.asarray(n)
    if not np.issubdtype(n_arr.dtype, np.integer):
        raise TypeError("n must be integer")
    if np.any(n_arr < 1):
        raise ValueError("n must be >= 1")
    out = _log_terms(n_arr, s) - log_norm_factor(s)
    return float(out) if np.ndim(out) == 0 else out


def _mode(s: float) -> int:
    """Smallest n with (n+1)^2 s^2 <= n^3, i.e. the first n with p_{n+1} <= p_n."""
    x = s * s
    n = max(1, int(x))
    while n > 1 and n * n * x <= (n - 1) ** 3:
        n -= 1
    while (n + 1) ** 2 * x > n**3:
        n += 1
    return n


def _window(s: float, log_cut: float):
    """Contiguous range of n with log-term >= log-term(mode) + log_cut."""
    mode = _mode(s)
    peak = float(_log_terms(mode, s))
    floor = peak + log_cut

    lo_block = np.arange(1, mode + 1)
    lo_vals = _log_terms(lo_block, s)
    below = np.nonzero(lo_vals < floor)[0]
    n_lo = int(lo_block[below[-1]] + 1) if below.size else 1

    width = max(16, int(4 * math.sqrt(mode) + 4 * math.sqrt(-log_cut * (mode + 1))))
    while True:
        hi_block = np.arange(mode, mode + width + 1)
        hi_vals = _log_terms(hi_block, s)
        past = np.nonzero(hi_vals < floor)[0]
        if past.size:
            n_hi = int(hi_block[past[0]] - 1)
            break
        width *= 2

    n = np.arange(n_lo, n_hi + 1)
    return n, _log_terms(n, s)


def log_normalization_sum(s: float, threshold: float = 1e-300) -> float:
    """ln of exp(-s^2) * sum_n n^2 s^(2(n-1)) / (n-1)!, summed in log-space.

    Terms below ``threshold`` relative to the largest are dropped. The
    result should match :func:`log_norm_factor`.
    """
    s = _check_s(s)
    if s == 0.0:
        return 0.0
    _, terms = _window(s, math.log(threshold))
    return float(logsumexp(terms))


def _check_threshold(threshold, allow_one=False):
    upper_ok = threshold <= 1.0 if allow_one else threshold < 1.0
    if not (threshold > 0.0 and upper_ok):
        raise ValueError(f"threshold must lie in (0, 1), got {threshold}")
    return float(threshold)


def weight_table(s: float, threshold: float = DEFAULT_THRESHOLD) -> CoefficientTable:
    """Retain every n whose weight is at least ``threshold`` times the largest.

    The window grows outward from the mode, located through the ratio
    p_{n+1}/p_n = (n+1)^2 s^2 / n^3, and retained weights are renormalized
    to sum to one.
    """
    s = _check_s(s)
    threshold = _check_threshold(threshold)
    if s == 0.0:
        return CoefficientTable(0.0, 1, 1, np.zeros(1), 0.0, threshold)
    n, terms = _window(s, math.log(threshold))
    lw = terms - logsumexp(terms)
    return CoefficientTable(s, int(n[0]), int(n[-1]), lw, log_norm_factor(s), threshold)


def moments(table: CoefficientTable) -> Moments:
    """Mean, variance and mode of the tabulated distribution.

    ``asymptotic_variance`` is the large-s prediction s^2 + 6 and is NaN for
    hand-built tables.
    """
    p = table.weights
    n = table.n.astype(float)
    p = p / p.sum()
    mean = float(np.dot(p, n))
    variance = float(np.dot(p, (n - mean) ** 2))
    argmax = table.n_lo + int(np.argmax(table.log_weights))
    asym = table.s * table.s + 6.0 if table.s is not None else math.nan
    return Moments(mean, variance, argmax, asym)


def significant_count(s: float, cutoff: float = DEFAULT_CUTOFF) -> int:
    """Number of n with p_n >= cutoff * max p_n.

    The default cutoff is exp(-100) relative to the largest weight.
    """
    s = _check_s(s, strict=True)
    cutoff = _check_threshold(cutoff, allow_one=True)
    n, _ = _window(s, math.log(cutoff))
    return int(n.size)
