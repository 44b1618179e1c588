"""Hydrogen bound-state energies, Kepler periods and level-spacing expansion.

Everything is in atomic units: energies in hartree, times in hbar/hartree.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass

from ._phase import reduce_phase

__all__ = [
    "SpacingExpansion",
    "energy",
    "kepler_period",
    "spacing",
    "anharmonic_phase",
    "linear_phase",
]


def _check_level(n, name="n"):
    if isinstance(n, bool) or not isinstance(n, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {n!r}")
    if n < 1:
        raise ValueError(f"{name} must be >= 1, got {n}")
    return int(n)


def _check_center(n_bar):
    if not isinstance(n_bar, numbers.Real) or isinstance(n_bar, bool):
        raise TypeError(f"n_bar must be a real number, got {n_bar!r}")
    if not n_bar >= 1:
        raise ValueError(f"n_bar must be >= 1, got {n_bar}")
    return n_bar


@dataclass(frozen=True)
class SpacingExpansion:
    """Energy gap E(n_bar + delta) - E(n_bar) and its two leading terms."""

    n_bar: int
    delta: int
    linear_term: float
    anharmonic_term: float
    exact: float

    @property
    def residual(self) -> float:
        return self.exact - (self.linear_term + self.anharmonic_term)


def energy(n: int) -> float:
    """Bound-state energy -1/(2 n^2) of principal quantum number ``n``."""
    n = _check_level(n)
    return -0.5 / (n * n)


def kepler_period(n_bar: float) -> float:
    """Classical orbital period 2*pi*n_bar**3."""
    n_bar = _check_center(n_bar)
    return 2.0 * math.pi * n_bar**3


def spacing(n_bar: int, delta: int) -> SpacingExpansion:
    """Expand the gap between levels ``n_bar`` and ``n_bar + delta``.

    ``delta`` may be negative. The exact gap uses the closed form
    (2 n_bar delta + delta^2) / (2 n_bar^2 n^2), which agrees with
    ``energy(n) - energy(n_bar)`` but avoids the cancellation of two nearly
    equal energies at large n.
    """
    n_bar = _check_level(n_bar, "n_bar")
    if isinstance(delta, bool) or not isinstance(delta, numbers.Integral):
        raise TypeError(f"delta must be an integer, got {delta!r}")
    delta = int(delta)
    n = _check_level(n_bar + delta, "n_bar + delta")
    if delta == 0:
        return SpacingExpansion(n_bar, 0, 0.0, 0.0, 0.0)
    kepler_freq = 1.0 / n_bar**3
    exact = (2 * n_bar * delta + delta * delta) / (2.0 * n_bar * n_bar * n * n)
    return SpacingExpansion(
        n_bar=n_bar,
        delta=delta,
        linear_term=delta * kepler_freq,
        anharmonic_term=-1.5 * delta * delta / n_bar * kepler_freq,
        exact=exact,
    )


def anharmonic_phase(n_bar: float, delta: float, t: float) -> float:
    """Phase t * 3 delta^2 / (2 n_bar^4) picked up by the quadratic spacing term.

    ``delta`` may be real here; this is an analysis tool rather than a level
    index. The result is not reduced modulo 2*pi.
    """
    n_bar = _check_center(n_bar)
    return t * (1.5 * delta * delta / n_bar) / n_bar**3


def linear_phase(n_bar: float, delta: float, t: float, reduce: bool = True) -> float:
    """Phase t * delta / n_bar^3 of the harmonic term, reduced into [-pi, pi]."""
    n_bar = _check_center(n_bar)
    phase = t * delta / n_bar**3
    return float(reduce_phase(phase)) if reduce else phase
