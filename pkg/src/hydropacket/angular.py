"""Angular superpositions |n Omega> over the degenerate n-manifold.

Each |n Omega> mixes the n^2 states |n l m> with amplitudes

    sqrt((2l+1)! / ((l+m)! (l-m)!)) sin(theta/2)^(l-m) cos(theta/2)^(l+m)
        * exp(i (m phi + l psi))

and its squared norm is exactly n^2 for every orientation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np
from scipy.special import gammaln, xlogy

__all__ = [
    "OmegaBar",
    "AngularAmplitude",
    "angular_amplitude",
    "manifold_amplitudes",
    "manifold_norm",
]


def _principal(angle: float) -> float:
    """Map an angle into (-pi, pi]."""
    r = math.remainder(angle, 2.0 * math.pi)
    return math.pi if r == -math.pi else r


class OmegaBar(NamedTuple):
    """Orientation triple (theta, phi, psi) in radians."""

    theta: float = 0.5 * math.pi
    phi: float = 0.0
    psi: float = 0.0

    @classmethod
    def make(cls, theta: float = 0.5 * math.pi, phi: float = 0.0, psi: float = 0.0) -> "OmegaBar":
        """Validate ``theta`` in [0, pi] and wrap ``phi``, ``psi`` into (-pi, pi]."""
        if not 0.0 <= theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {theta}")
        return cls(float(theta), _principal(float(phi)), _principal(float(psi)))


@dataclass(frozen=True)
class AngularAmplitude:
    n: int
    l: int
    m: int
    amplitude: complex


def _check_indices(n, l, m):
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= l <= n - 1:
        raise ValueError(f"l must satisfy 0 <= l <= n-1, got l={l} for n={n}")
    if not -l <= m <= l:
        raise ValueError(f"m must satisfy |m| <= l, got m={m} for l={l}")


def _log_modulus(l, m, theta):
    # log of the real prefactor; xlogy gives 0*log(0) = 0 at the poles
    half = 0.5 * theta
    log_coef = 0.5 * (gammaln(2 * l + 2) - gammaln(l + m + 1) - gammaln(l - m + 1))
    return log_coef + xlogy(l - m, math.sin(half)) + xlogy(l + m, math.cos(half))


def angular_amplitude(n: int, l: int, m: int, omega_bar=OmegaBar()) -> complex:
    """Amplitude of |n l m> inside |n Omega>."""
    _check_indices(n, l, m)
    theta, phi, psi = omega_bar
    modulus = math.exp(_log_modulus(l, m, theta))
    return modulus * complex(math.cos(m * phi + l * psi), math.sin(m * phi + l * psi))


def manifold_amplitudes(n: int, omega_bar=OmegaBar()) -> Iterator[AngularAmplitude]:
    """Yield every (l, m) amplitude of the n-manifold in (l, m) order."""
    for l in range(n):
        for m in range(-l, l + 1):
            yield AngularAmplitude(n, l, m, angular_amplitude(n, l, m, omega_bar))


def manifold_norm(n: int, omega_bar=OmegaBar()) -> float:
    """Direct double sum of |amplitude|^2 over the n-manifold (equals n^2)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    theta = omega_bar[0]
    l = np.repeat(np.arange(n), 2 * np.arange(n) + 1)
    m = np.concatenate([np.arange(-k, k + 1) for k in range(n)])
    return float(np.exp(2.0 * _log_modulus(l, m, theta)).sum())
