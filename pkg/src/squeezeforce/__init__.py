"""Laser-cooling force on two-level atoms driven by squeezed light.

Steady-state Bloch components under squeezed-coherent driving, with and
without a squeezed-vacuum reservoir, the standing-wave force they produce,
and the parameter sweeps that map it out.
"""

from .bloch import BlochY, Config, DriveParams, Quadrature, quadrature_effective_m, sigma_y_sc, sigma_y_svsc
from .errors import (
    AboveThresholdError,
    DegenerateDenominatorError,
    DomainError,
    GridPointError,
    NoCrossoverError,
    NumericalError,
    QuadratureError,
    SqueezeForceError,
)
from .force import (
    AveragingMode,
    FieldGeometry,
    ForceRecord,
    averaged_force,
    doppler_limit_temperature,
    local_force,
)
from .squeeze import (
    DecayRates,
    OpoConfig,
    SqueezeParams,
    decay_rates,
    degree_of_squeezing,
    opo_spectrum,
    squeeze_from_degree,
    squeeze_from_r,
    validate_moments,
)
from .sweep import Axis, CrossoverResult, SweepGrid, fig1_curves, fig2_surface, find_crossover, run_sweep

__version__ = "0.1.0"
