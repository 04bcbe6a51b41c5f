"""Squeezed-field moments, ideal OPO spectra and squeezed-bath decay rates.

A broadband squeezed field is summarised by its photon number ``N``, the
magnitude ``|M|`` of the two-photon correlation and the correlation phase
``phi``. Quantum mechanics bounds them by ``|M|**2 <= N (N + 1)``; an ideal
(pure) squeezed vacuum saturates the bound with ``N = sinh(r)**2`` and
``|M| = sinh(r) cosh(r)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AboveThresholdError, DomainError

#: absolute slack allowed on the quantum bound M^2 <= N(N+1)
BOUND_TOL = 1e-12


def _bound_excess(n_photons: float, m_corr: float) -> float:
    return m_corr * m_corr - n_photons * (n_photons + 1.0)


@dataclass(frozen=True)
class SqueezeParams:
    """Moments of a squeezed field.

    Build ideal states with :func:`squeeze_from_r` or
    :func:`squeeze_from_degree`. Direct construction models lossy
    squeezing; ``r`` is then ``None`` and only the bound is enforced.
    """

    n_photons: float
    m_corr: float
    phi: float = 0.0
    r: float | None = None
    ideal: bool = False

    def __post_init__(self):
        for name in ("n_photons", "m_corr", "phi"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.n_photons < 0 or self.m_corr < 0:
            raise DomainError("N and |M| must be non-negative")
        # relative slack: sinh/cosh round-off grows with N for ideal states
        scale = max(1.0, self.n_photons * (self.n_photons + 1.0))
        if _bound_excess(self.n_photons, self.m_corr) > BOUND_TOL * scale:
            raise DomainError(
                f"|M|^2 exceeds N(N+1) for N={self.n_photons!r}, |M|={self.m_corr!r}"
            )

    @property
    def n(self) -> float:
        """Thermal-like occupation factor ``1 + 2N``."""
        return 1.0 + 2.0 * self.n_photons


@dataclass(frozen=True)
class OpoConfig:
    """Ideal degenerate OPO below threshold: cavity decay and gain."""

    kappa: float
    epsilon: float

    def __post_init__(self):
        if not (math.isfinite(self.kappa) and self.kappa > 0):
            raise DomainError("kappa must be positive and finite")
        if not (math.isfinite(self.epsilon) and self.epsilon >= 0):
            raise DomainError("epsilon must be non-negative and finite")
        if self.epsilon >= self.kappa / 2:
            raise AboveThresholdError(
                f"epsilon={self.epsilon!r} >= kappa/2={self.kappa / 2!r}: OPO above threshold"
            )

    @property
    def lambda_opo(self) -> float:
        return self.kappa / 2 + self.epsilon

    @property
    def mu(self) -> float:
        return self.kappa / 2 - self.epsilon


@dataclass(frozen=True)
class DecayRates:
    """Dipole quadrature decay rates in units of the vacuum rate gamma."""

    gamma_x: float
    gamma_y: float


@dataclass(frozen=True)
class MomentCheck:
    """Outcome of :func:`validate_moments`; ``excess`` is M^2 - N(N+1)."""

    ok: bool
    excess: float


def squeeze_from_r(r: float, phi: float = 0.0) -> SqueezeParams:
    """Ideal squeezed vacuum with squeeze factor ``r``."""
    if not math.isfinite(r) or r < 0:
        raise DomainError(f"squeeze factor must be finite and >= 0, got {r!r}")
    sh, ch = math.sinh(r), math.cosh(r)
    return SqueezeParams(sh * sh, sh * ch, phi, r=r, ideal=True)


def degree_of_squeezing(p: SqueezeParams) -> float:
    """Fractional noise reduction ``2(|M| - N)``; equals ``1 - exp(-2r)`` when ideal."""
    return 2.0 * (p.m_corr - p.n_photons)


def squeeze_from_degree(s: float, phi: float = 0.0) -> SqueezeParams:
    """Ideal state with degree of squeezing ``s`` in [0, 1)."""
    if not math.isfinite(s) or s < 0 or s >= 1:
        raise DomainError(f"degree of squeezing must lie in [0, 1), got {s!r}")
    return squeeze_from_r(-0.5 * math.log1p(-s), phi)


def validate_moments(n_photons: float, m_corr: float) -> MomentCheck:
    """Check the quantum bound ``M^2 <= N(N+1)`` with absolute slack 1e-12."""
    if n_photons < 0 or m_corr < 0:
        raise DomainError("moments must be non-negative")
    excess = _bound_excess(n_photons, m_corr)
    return MomentCheck(excess <= BOUND_TOL, excess)


def opo_spectrum(cfg: OpoConfig, omega):
    """Photon number ``N(omega)`` and correlation ``M(omega)`` of an ideal OPO.

    Both are sums/differences of Lorentzians of widths ``mu`` and
    ``lambda_opo``. ``N`` is evaluated in product form so the Lorentzian
    difference does not cancel in the tails. Accepts scalars or arrays.
    """
    w2 = np.square(np.asarray(omega, dtype=float))
    if not np.all(np.isfinite(w2)):
        raise DomainError("omega must be finite")
    lam2, mu2 = cfg.lambda_opo**2, cfg.mu**2
    c = (lam2 - mu2) / 4
    a = 1.0 / (w2 + mu2)
    b = 1.0 / (w2 + lam2)
    # a - b == (lam2 - mu2) * a * b
    n_w = 4.0 * c * c * a * b
    m_w = c * (a + b)
    if n_w.ndim == 0:
        return float(n_w), float(m_w)
    return n_w, m_w


def decay_rates(p: SqueezeParams) -> DecayRates:
    """Noisy (``gamma_x``) and quiet (``gamma_y``) quadrature decay rates.

    For ideal states ``gamma_y`` is taken as ``exp(-2r)/2``, which equals
    ``N + 1/2 - |M|`` without the cancellation at large ``r``.
    """
    base = p.n_photons + 0.5
    if p.ideal and p.r is not None:
        return DecayRates(base + p.m_corr, 0.5 * math.exp(-2.0 * p.r))
    return DecayRates(base + p.m_corr, base - p.m_corr)
