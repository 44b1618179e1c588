"""Temporal stability: time evolution only shifts the gamma label.

The propagator multiplies the n-th amplitude by exp(i t / 2n^2), which
merges with the exp(i gamma / n^2) already present, so evolving for time t
maps (s, gamma, Omega) to (s, gamma + t/2, Omega).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ._phase import reduce_quotient
from .coefficients import CoefficientTable, PacketParams

__all__ = ["OverlapValue", "evolve_params", "overlap"]


@dataclass(frozen=True)
class OverlapValue:
    value: complex
    modulus_sq: float


def evolve_params(params: PacketParams, t: float) -> PacketParams:
    """Labels of the state after evolving ``params`` for time ``t`` (a.u.)."""
    return replace(params, gamma=params.gamma + 0.5 * t)


def overlap(table: CoefficientTable, gamma1: float, gamma2: float) -> OverlapValue:
    """Normalized overlap <s gamma1 Omega | s gamma2 Omega> = sum_n p_n e^{i(gamma1-gamma2)/n^2}.

    Omega drops out because <n Omega|n' Omega> = n^2 delta_{nn'}. Only the
    difference of the two labels matters.
    """
    n = table.n.astype(float)
    phase = reduce_quotient(gamma1 - gamma2, n * n)
    p = table.weights
    re = float(np.sum(p * np.cos(phase)))
    im = float(np.sum(p * np.sin(phase)))
    return OverlapValue(complex(re, im), re * re + im * im)
