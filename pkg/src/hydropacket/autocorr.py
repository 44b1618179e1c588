"""Autocorrelation C(t) = |sum_n p_n exp(i t / 2n^2)|^2 and its recurrence peaks."""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, TextIO

import numpy as np

from ._phase import reduce_quotient
from .coefficients import DEFAULT_THRESHOLD, CoefficientTable, weight_table
from .spectrum import kepler_period

__all__ = [
    "AutocorrSeries",
    "PeakList",
    "Recurrence",
    "evaluate",
    "evaluate_many",
    "scan",
    "find_peaks",
    "recurrence_summary",
]

# Rows per block in scans. Fixed so results never depend on the worker count.
_BLOCK = 256


@dataclass(frozen=True, eq=False)
class AutocorrSeries:
    times: np.ndarray
    values: np.ndarray
    kepler_period: float
    s: float | None

    @property
    def t_over_kepler(self) -> np.ndarray:
        return self.times / self.kepler_period

    def write_csv(self, fh: TextIO, comment: str | None = None) -> None:
        """Write columns t_atomic, t_over_kepler, C."""
        if comment is not None:
            fh.write(f"# {comment}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["t_atomic", "t_over_kepler", "C"])
        for t, tk, c in zip(self.times, self.t_over_kepler, self.values):
            writer.writerow([repr(float(t)), repr(float(tk)), repr(float(c))])


@dataclass(frozen=True, eq=False)
class PeakList:
    times: np.ndarray
    heights: np.ndarray

    def __len__(self) -> int:
        return len(self.times)

    def __iter__(self):
        return iter(zip(self.times.tolist(), self.heights.tolist()))


class Recurrence(NamedTuple):
    height: float
    time_in_periods: float


def _terms(table):
    n = table.n.astype(float)
    return 2.0 * n * n, table.weights


def evaluate(table: CoefficientTable, t: float) -> float:
    """C(t) for a single time ``t`` in atomic units."""
    return float(evaluate_many(table, np.array([t], dtype=float))[0])


def evaluate_many(table: CoefficientTable, times, n_jobs: int = 1) -> np.ndarray:
    """C(t) at every entry of ``times``; points are independent.

    Blocks of time points may run on ``n_jobs`` threads; each block writes
    into its own slice, so the output is identical for any ``n_jobs``.
    """
    times = np.asarray(times, dtype=float).ravel()
    out = np.empty_like(times)
    two_n2, p = _terms(table)

    def work(start):
        stop = min(start + _BLOCK, times.size)
        phase = reduce_quotient(times[start:stop, None], two_n2)
        re = (np.cos(phase) * p).sum(axis=1)
        im = (np.sin(phase) * p).sum(axis=1)
        out[start:stop] = re * re + im * im

    starts = range(0, times.size, _BLOCK)
    if n_jobs > 1 and times.size > _BLOCK:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            list(pool.map(work, starts))
    else:
        for start in starts:
            work(start)
    return out


def scan(table: CoefficientTable, t_max: float, samples: int, n_jobs: int = 1) -> AutocorrSeries:
    """Sample C(t) on ``samples`` uniform points of [0, t_max]."""
    if samples < 2:
        raise ValueError(f"samples must be >= 2, got {samples}")
    if not t_max > 0:
        raise ValueError(f"t_max must be > 0, got {t_max}")
    times = np.linspace(0.0, t_max, samples)
    values = evaluate_many(table, times, n_jobs=n_jobs)
    return AutocorrSeries(times, values, kepler_period(table.center), table.s)


def find_peaks(series: AutocorrSeries, min_height: float = 0.0, skip_initial: float = 0.0) -> PeakList:
    """Strict three-point local maxima of the sampled series.

    Keeps peaks with height >= ``min_height`` and time > ``skip_initial``.
    The end points are never reported since they lack a neighbour.
    """
    v = np.asarray(series.values)
    t = np.asarray(series.times)
    if v.size < 3:
        return PeakList(np.empty(0), np.empty(0))
    mid = v[1:-1]
    idx = np.nonzero((mid > v[:-2]) & (mid > v[2:]))[0] + 1
    keep = (v[idx] >= min_height) & (t[idx] > skip_initial)
    idx = idx[keep]
    return PeakList(t[idx].copy(), v[idx].copy())


def recurrence_summary(
    s: float,
    n_periods: int = 3,
    samples_per_period: int = 2000,
    threshold: float = DEFAULT_THRESHOLD,
    n_jobs: int = 1,
) -> Recurrence:
    """Highest peak of C(t) after 0.1 Kepler periods within ``n_periods`` periods.

    Returns ``Recurrence(0.0, nan)`` if the window holds no local maximum.
    """
    if not s > 0:
        raise ValueError(f"s must be > 0, got {s}")
    if n_periods < 1:
        raise ValueError(f"n_periods must be >= 1, got {n_periods}")
    table = weight_table(s, threshold)
    t_k = kepler_period(table.center)
    series = scan(table, n_periods * t_k, n_periods * samples_per_period, n_jobs=n_jobs)
    peaks = find_peaks(series, 0.0, 0.1 * t_k)
    if not len(peaks):
        return Recurrence(0.0, math.nan)
    i = int(np.argmax(peaks.heights))
    return Recurrence(float(peaks.heights[i]), float(peaks.times[i] / t_k))
