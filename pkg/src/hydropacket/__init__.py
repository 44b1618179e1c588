"""Temporally stable coherent states of hydrogen: weights, autocorrelation, dephasing."""

__version__ = "0.1.0"

from .angular import AngularAmplitude, OmegaBar, angular_amplitude, manifold_norm
from .autocorr import (
    AutocorrSeries,
    PeakList,
    Recurrence,
    evaluate,
    evaluate_many,
    find_peaks,
    recurrence_summary,
    scan,
)
from .coefficients import (
    CoefficientTable,
    Moments,
    PacketParams,
    log_normalization_sum,
    log_weight,
    moments,
    norm_factor,
    significant_count,
    weight_table,
)
from .packet import OverlapValue, evolve_params, overlap
from .spectrum import SpacingExpansion, anharmonic_phase, energy, kepler_period, linear_phase, spacing
