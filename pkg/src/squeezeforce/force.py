"""Standing-wave cooling force, its spatial averages and the Doppler limit.

The drive is a standing wave ``Omega(x) = Omega_0 cos(kx)`` whose
logarithmic gradient is ``q = -k tan(kx)``. The local force
``hbar q Omega(x) sigma_Y`` is expressed in units of ``hbar k gamma / 2``:

    F(x) = -2 beta_0 sin(kx) sigma_Y(beta_0 cos(kx))

The product form never evaluates ``tan`` at the nodes. ``F`` has period
``lambda/2`` and is odd about the node at ``kx = pi/2``, so its signed
average over a period vanishes; spatial averages are therefore taken of the
magnitude. All averages depend only on ``kx``, never on the wavelength.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import constants

from .bloch import (
    Config,
    DriveParams,
    Quadrature,
    lorentz_coefficients,
    quadrature_effective_m,
    sigma_y_sc_kernel,
    sigma_y_svsc_kernel,
)
from .errors import DegenerateDenominatorError, DomainError
from .quadrature import integrate_batch
from .squeeze import SqueezeParams, degree_of_squeezing

CS_D2_WAVELENGTH = 852e-9

_KERNELS = {Config.SC: sigma_y_sc_kernel, Config.SVSC: sigma_y_svsc_kernel}


class AveragingMode(enum.Enum):
    ABS_MEAN = "AbsMean"
    QUARTER_PERIOD = "QuarterPeriod"
    PEAK_LOCAL = "PeakLocal"


@dataclass(frozen=True)
class FieldGeometry:
    wavelength: float = CS_D2_WAVELENGTH

    def __post_init__(self):
        if not (math.isfinite(self.wavelength) and self.wavelength > 0):
            raise DomainError("wavelength must be positive and finite")

    @property
    def k(self) -> float:
        return 2.0 * math.pi / self.wavelength


@dataclass(frozen=True)
class ForceRecord:
    """One evaluated force sample; ``force`` is in units of hbar k gamma / 2."""

    config: Config
    quadrature: Quadrature
    degree: float
    phi: float
    delta: float
    beta: float
    averaging: AveragingMode
    force: float
    signed: bool = False


def local_force(g: FieldGeometry, p: SqueezeParams, d: DriveParams, x, config: Config):
    """Force at position(s) ``x`` (meters) in units of hbar k gamma / 2."""
    theta = g.k * np.asarray(x, dtype=float)
    m = quadrature_effective_m(p, d.quadrature)
    sigma, den = _KERNELS[config](p.n, m, d.beta * np.cos(theta), d.delta, p.phi)
    if np.any(den <= 0):
        raise DegenerateDenominatorError(
            f"{config.value} denominator not positive along the standing wave",
            params=dict(n_photons=p.n_photons, m_corr=p.m_corr, phi=p.phi,
                        beta=d.beta, delta=d.delta, quadrature=d.quadrature.value),
        )
    out = -2.0 * d.beta * np.sin(theta) * sigma
    return float(out) if out.ndim == 0 else out


def _check_denominators(n, m, beta, delta, phi, config):
    _, den0, curv = lorentz_coefficients(n, m, delta, phi, config)
    # denominator is den0 + curv * b^2 for b^2 in [0, beta^2]
    bad = ~((den0 > 0) & (den0 + curv * beta * beta > 0))
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        raise DegenerateDenominatorError(
            f"{config.value} denominator not positive",
            params=dict(n=float(n[i]), m=float(m[i]), beta=float(beta[i]),
                        delta=float(delta[i]), phi=float(phi[i])),
        )


def _golden_max(f, lo, hi, iterations=80):
    """Vectorized golden-section maximisation of unimodal ``f`` on ``[lo, hi]``."""
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo.copy(), hi.copy()
    c = b - inv * (b - a)
    d = a + inv * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iterations):
        left = fc > fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        c_new = b - inv * (b - a)
        d_new = a + inv * (b - a)
        c, d = c_new, d_new
        fc, fd = f(c), f(d)
    return np.maximum(fc, fd)


def averaged_force_batch(n, m, phi, beta, delta, config: Config,
                         mode: AveragingMode = AveragingMode.ABS_MEAN,
                         signed=False, rtol=1e-9):
    """Spatially averaged force for arrays of parameters (units hbar k gamma / 2).

    ``m`` is the signed effective correlation. With ``signed`` the magnitude
    is multiplied by the sign of sigma_Y on the driven quarter period, which
    is positive when the force there points towards the antinode.
    """
    n, m, phi, beta, delta = np.broadcast_arrays(
        *(np.atleast_1d(np.asarray(v, dtype=float)) for v in (n, m, phi, beta, delta))
    )
    _check_denominators(n, m, beta, delta, phi, config)
    kernel = _KERNELS[config]

    def local(idx, theta):
        b0 = beta[idx, None]
        sigma, _ = kernel(n[idx, None], m[idx, None], b0 * np.cos(theta),
                          delta[idx, None], phi[idx, None])
        return -2.0 * b0 * np.sin(theta) * sigma

    size = n.size
    if mode is AveragingMode.ABS_MEAN:
        # mean of |F| over half a period, kx in [0, pi]
        vals, _ = integrate_batch(lambda i, t: np.abs(local(i, t)), 0.0, math.pi, size, rtol=rtol)
        out = vals / math.pi
    elif mode is AveragingMode.QUARTER_PERIOD:
        vals, _ = integrate_batch(local, 0.0, 0.5 * math.pi, size, rtol=rtol)
        out = np.abs(vals) * (2.0 / math.pi)
    else:
        grid = np.linspace(0.0, 0.5 * math.pi, 1025)
        idx = np.arange(size)
        samples = np.abs(local(idx, grid))
        j = np.argmax(samples, axis=1)
        step = grid[1]
        lo = np.clip(grid[j] - step, 0.0, 0.5 * math.pi)
        hi = np.clip(grid[j] + step, 0.0, 0.5 * math.pi)
        polished = _golden_max(lambda t: np.abs(local(idx, t[:, None])[:, 0]), lo, hi)
        out = np.maximum(polished, samples[idx, j])
    if signed:
        num, _, _ = lorentz_coefficients(n, m, delta, phi, config)
        out = np.sign(num) * out
    return out


def averaged_force(g: FieldGeometry, p: SqueezeParams, d: DriveParams, config: Config,
                   mode: AveragingMode = AveragingMode.ABS_MEAN, *, signed=False, rtol=1e-9):
    """Spatially averaged force (units hbar k gamma / 2); non-negative unless ``signed``.

    ``g`` is accepted for interface symmetry with :func:`local_force`; the
    average is wavelength independent.
    """
    m = quadrature_effective_m(p, d.quadrature)
    out = averaged_force_batch(p.n, m, p.phi, d.beta, d.delta, config, mode, signed, rtol)
    return float(out[0])


def force_record(p: SqueezeParams, d: DriveParams, config: Config,
                 mode: AveragingMode = AveragingMode.ABS_MEAN, *, signed=False):
    """Evaluate :func:`averaged_force` and wrap it with its inputs."""
    value = averaged_force(FieldGeometry(), p, d, config, mode, signed=signed)
    return ForceRecord(config, d.quadrature, degree_of_squeezing(p), p.phi,
                       d.delta, d.beta, mode, value, signed)


def doppler_limit_temperature(gamma: float) -> float:
    """Doppler temperature ``hbar gamma / (2 k_B)`` in kelvin; ``gamma`` in rad/s."""
    if not (math.isfinite(gamma) and gamma > 0):
        raise DomainError(f"decay rate must be positive and finite, got {gamma!r}")
    return constants.hbar * gamma / (2.0 * constants.k)
