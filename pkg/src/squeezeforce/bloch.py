"""Steady-state dispersive Bloch component sigma_Y of a driven two-level atom.

Two driving configurations are modelled, both in units where the vacuum
decay rate gamma = 1:

* ``SC``   -- squeezed-coherent drive only,
* ``SVSC`` -- squeezed-coherent drive with the dipole also damped by a
  squeezed vacuum whose noisy or quiet quadrature is selected by ``Phi``.

The quadrature choice enters through the sign of the effective correlation
``m`` (``+|M|`` noisy, ``-|M|`` quiet), so that ``n/2 + m`` is the decay rate
of the selected dipole quadrature.

Both steady states have the form ``sigma = num * b / (den0 + curv * b**2)``
in the Rabi frequency ``b``; :func:`lorentz_coefficients` exposes those three
coefficients for the force averaging.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDenominatorError, DomainError, NumericalError
from .squeeze import SqueezeParams


class Quadrature(enum.Enum):
    NOISY = "Noisy"  # Phi = 0 or pi
    QUIET = "Quiet"  # Phi = pi/2


class Config(enum.Enum):
    SC = "SC"
    SVSC = "SVSC"


@dataclass(frozen=True)
class DriveParams:
    """Normalized drive: ``beta = Omega/gamma``, ``delta = detuning/gamma``."""

    beta: float
    delta: float = 0.0
    quadrature: Quadrature = Quadrature.NOISY

    def __post_init__(self):
        if not math.isfinite(self.beta) or self.beta < 0:
            raise DomainError(f"beta must be finite and >= 0, got {self.beta!r}")
        if not math.isfinite(self.delta):
            raise DomainError("delta must be finite")
        if abs(self.delta) >= 1:
            warnings.warn(
                f"|delta|={abs(self.delta)!r} >= 1: outside the near-resonant regime",
                RuntimeWarning,
                stacklevel=3,
            )


@dataclass(frozen=True)
class BlochY:
    value: float
    config: Config


def quadrature_effective_m(p: SqueezeParams, quadrature: Quadrature) -> float:
    """Signed correlation entering the steady state for the chosen quadrature."""
    return p.m_corr if quadrature is Quadrature.NOISY else -p.m_corr


def lorentz_coefficients(n, m, delta, phi, config: Config):
    """Coefficients ``(num, den0, curv)`` with ``sigma(b) = num*b / (den0 + curv*b^2)``.

    ``n = 1 + 2N``; arguments broadcast as numpy arrays.
    """
    n = np.asarray(n, dtype=float)
    m = np.asarray(m, dtype=float)
    delta = np.asarray(delta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    half_n = 0.5 * n
    curv = half_n + m * np.cos(phi)
    if config is Config.SC:
        num = 0.5 * (delta + m * np.sin(phi))
        den0 = n * (0.25 * n * n + delta * delta - m * m)
    else:
        g_sel = half_n + m
        num = 0.5 * (delta + 2.0 * m * g_sel * np.sin(phi))
        den0 = half_n * (2.0 * delta * delta + g_sel * g_sel)
    return num, den0, curv


def sigma_y_sc_kernel(n, m, beta, delta, phi):
    """Squeezed-coherent steady state on raw arrays (no validation)."""
    n = np.asarray(n, dtype=float)
    beta = np.asarray(beta, dtype=float)
    den = n * (0.25 * n * n + delta * delta - m * m) + beta * beta * (0.5 * n + m * np.cos(phi))
    return beta * (delta + m * np.sin(phi)) / (2.0 * den), den


def sigma_y_svsc_kernel(n, m, beta, delta, phi):
    """Squeezed-vacuum plus squeezed-coherent steady state on raw arrays."""
    n = np.asarray(n, dtype=float)
    beta = np.asarray(beta, dtype=float)
    g_sel = 0.5 * n + m
    den = 0.5 * n * (beta * beta + 2.0 * delta * delta + g_sel * g_sel) + beta * beta * m * np.cos(phi)
    return 0.5 * beta * (delta + 2.0 * m * g_sel * np.sin(phi)) / den, den


_KERNELS = {Config.SC: sigma_y_sc_kernel, Config.SVSC: sigma_y_svsc_kernel}


def _evaluate(p: SqueezeParams, d: DriveParams, config: Config) -> BlochY:
    m = quadrature_effective_m(p, d.quadrature)
    value, den = _KERNELS[config](p.n, m, d.beta, d.delta, p.phi)
    value, den = float(value), float(den)
    if not den > 0:
        raise DegenerateDenominatorError(
            f"{config.value} steady-state denominator {den!r} <= 0",
            params=dict(n_photons=p.n_photons, m_corr=p.m_corr, phi=p.phi,
                        beta=d.beta, delta=d.delta, quadrature=d.quadrature.value),
        )
    if abs(value) > 1.0:
        raise NumericalError(f"|sigma_Y| = {abs(value)!r} exceeds the Bloch-vector bound")
    return BlochY(value, config)


def sigma_y_sc(p: SqueezeParams, d: DriveParams) -> BlochY:
    """sigma_Y under squeezed-coherent driving alone."""
    return _evaluate(p, d, Config.SC)


def sigma_y_svsc(p: SqueezeParams, d: DriveParams) -> BlochY:
    """sigma_Y with the added squeezed-vacuum reservoir."""
    return _evaluate(p, d, Config.SVSC)


def sigma_y(p: SqueezeParams, d: DriveParams, config: Config) -> BlochY:
    return _evaluate(p, d, config)
