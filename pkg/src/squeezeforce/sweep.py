"""Parameter sweeps behind the force figures, and the F_sv = F crossover.

Grid points are flattened in a fixed row order, cut into fixed-size chunks
and evaluated by a thread pool. Each chunk writes to its own pre-indexed
slice of the result, and the per-point arithmetic never looks at its
neighbours, so the output is identical for any worker count.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bloch import Config, Quadrature
from .errors import DomainError, GridPointError, NoCrossoverError, NumericalError
from .force import AveragingMode, ForceRecord, averaged_force_batch
from .squeeze import squeeze_from_degree

CHUNK = 512
MAX_GRID = 10**8

FIG1_PHI = 0.8 * math.pi
FIG1_DEGREE = 0.75
FIG2_BETA = 10.0

# (config, quadrature) for the solid, dotted and dashed curves
FIG1_CURVES = (
    (Config.SVSC, Quadrature.NOISY),
    (Config.SVSC, Quadrature.QUIET),
    (Config.SC, Quadrature.NOISY),
)


@dataclass(frozen=True)
class Axis:
    """``count`` evenly spaced values from ``lo`` to ``hi``."""

    lo: float
    hi: float
    count: int
    endpoint: bool = True

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DomainError("axis bounds must be finite")
        if self.count < 1:
            raise DomainError("axis count must be >= 1")
        if self.count == 1 and self.lo != self.hi:
            raise DomainError("a single-point axis needs lo == hi")
        if self.count >= 2 and not self.lo < self.hi:
            raise DomainError(f"axis needs lo < hi, got {self.lo!r} >= {self.hi!r}")

    def values(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.lo])
        return np.linspace(self.lo, self.hi, self.count, endpoint=self.endpoint)


@dataclass(frozen=True)
class SweepGrid:
    beta: Axis
    delta: tuple = (0.0,)
    phi: Axis = Axis(FIG1_PHI, FIG1_PHI, 1)
    degree: Axis = Axis(FIG1_DEGREE, FIG1_DEGREE, 1)
    curves: tuple = FIG1_CURVES
    averaging: AveragingMode = AveragingMode.ABS_MEAN
    signed: bool = False

    def __post_init__(self):
        if self.beta.lo < 0:
            raise DomainError("beta must be >= 0")
        if not (0 <= self.degree.lo and self.degree.hi < 1):
            raise DomainError("degree of squeezing must lie in [0, 1)")
        if not self.delta or not self.curves:
            raise DomainError("delta and curves must be non-empty")
        if self.size > MAX_GRID:
            raise DomainError(f"grid of {self.size} points exceeds the {MAX_GRID} limit")

    @property
    def size(self) -> int:
        return (self.beta.count * len(self.delta) * self.phi.count
                * self.degree.count * len(self.curves))


@dataclass(frozen=True)
class CrossoverResult:
    beta_star: float
    bracket: tuple
    residual: float
    iterations: int


def resolve_workers(workers=None) -> int:
    if workers in (None, "auto"):
        return os.cpu_count() or 1
    workers = int(workers)
    if workers < 1:
        raise DomainError("workers must be positive")
    return workers


def _moments(degree):
    """``(n, |M|)`` arrays, computed exactly as :func:`squeeze_from_degree` does."""
    degree = np.atleast_1d(np.asarray(degree, dtype=float))
    uniq, inv = np.unique(degree, return_inverse=True)
    params = [squeeze_from_degree(float(s)) for s in uniq]
    n = np.array([p.n for p in params])[inv]
    m = np.array([p.m_corr for p in params])[inv]
    return n, m


def _point(cols, i):
    return {k: (v[i].value if hasattr(v[i], "value") else float(v[i])) for k, v in cols.items()}


def _evaluate_chunk(cols, sl, mode, signed, out):
    for config in Config:
        idx = np.flatnonzero(cols["config"][sl] == config) + sl.start
        if idx.size == 0:
            continue
        n, m_abs = _moments(cols["degree"][idx])
        quiet = cols["quadrature"][idx] == Quadrature.QUIET
        m = np.where(quiet, -m_abs, m_abs)
        try:
            out[idx] = averaged_force_batch(
                n, m, cols["phi"][idx].astype(float), cols["beta"][idx].astype(float),
                cols["delta"][idx].astype(float), config, mode, signed)
        except NumericalError as exc:
            for i in idx:  # locate the offending point
                try:
                    averaged_force_batch(n[idx == i], m[idx == i], cols["phi"][i],
                                         cols["beta"][i], cols["delta"][i], config, mode, signed)
                except NumericalError:
                    raise GridPointError(f"evaluation failed: {exc}", _point(cols, i)) from exc
            raise


def evaluate_points(cols, mode=AveragingMode.ABS_MEAN, signed=False, workers=None):
    """Averaged force for flat columns of grid points.

    ``cols`` maps ``config, quadrature, degree, phi, delta, beta`` to equal
    length object/float arrays.
    """
    size = len(cols["beta"])
    out = np.empty(size)
    slices = [slice(s, min(s + CHUNK, size)) for s in range(0, size, CHUNK)]
    nworkers = min(resolve_workers(workers), max(1, len(slices)))
    if nworkers == 1:
        for sl in slices:
            _evaluate_chunk(cols, sl, mode, signed, out)
    else:
        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            for fut in [pool.submit(_evaluate_chunk, cols, sl, mode, signed, out) for sl in slices]:
                fut.result()
    return out


def run_sweep(grid: SweepGrid, workers=None) -> list[ForceRecord]:
    """Evaluate every grid point; rows ordered degree, phi, delta, beta, curve."""
    rows = list(itertools.product(grid.degree.values(), grid.phi.values(),
                                  grid.delta, grid.beta.values(), grid.curves))
    cols = {
        "config": np.array([r[4][0] for r in rows], dtype=object),
        "quadrature": np.array([r[4][1] for r in rows], dtype=object),
        "degree": np.array([r[0] for r in rows], dtype=float),
        "phi": np.array([r[1] for r in rows], dtype=float),
        "delta": np.array([r[2] for r in rows], dtype=float),
        "beta": np.array([r[3] for r in rows], dtype=float),
    }
    forces = evaluate_points(cols, grid.averaging, grid.signed, workers)
    return [
        ForceRecord(c, q, float(s), float(ph), float(dl), float(b), grid.averaging, float(f), grid.signed)
        for (s, ph, dl, b, (c, q)), f in zip(rows, forces)
    ]


def fig1_curves(delta=0.0, phi=FIG1_PHI, degree=FIG1_DEGREE, beta=Axis(0.0, 20.0, 200),
                mode=AveragingMode.ABS_MEAN, workers=None) -> list[ForceRecord]:
    """Force against Rabi frequency: solid (SVSC, noisy), dotted (SVSC, quiet), dashed (SC)."""
    grid = SweepGrid(beta=beta, delta=(float(delta),), phi=Axis(phi, phi, 1),
                     degree=Axis(degree, degree, 1), averaging=mode)
    return run_sweep(grid, workers)


def fig2_surface(delta=0.0, beta=FIG2_BETA, degree=Axis(0.0, 0.95, 96),
                 phi=Axis(0.0, 2 * math.pi, 128, endpoint=False),
                 mode=AveragingMode.ABS_MEAN, workers=None) -> list[ForceRecord]:
    """Signed averaged F_sv (noisy quadrature) over degree of squeezing and phase.

    Rows are degree-major. Values carry the sign of sigma_Y so the surface
    keeps its odd symmetry in ``phi`` at resonance.
    """
    grid = SweepGrid(beta=Axis(beta, beta, 1), delta=(float(delta),), phi=phi, degree=degree,
                     curves=((Config.SVSC, Quadrature.NOISY),), averaging=mode, signed=True)
    return run_sweep(grid, workers)


def _force_gap(delta, phi, degree, mode, rtol):
    n, m = _moments(degree)

    def g(beta):
        sv = averaged_force_batch(n, m, phi, beta, delta, Config.SVSC, mode, rtol=rtol)[0]
        sc = averaged_force_batch(n, m, phi, beta, delta, Config.SC, mode, rtol=rtol)[0]
        return float(sv - sc)

    return g


def find_crossover(delta=0.0, phi=FIG1_PHI, degree=FIG1_DEGREE, bracket=(0.5, 10.0),
                   mode=AveragingMode.ABS_MEAN, tol=1e-10, max_iter=200) -> CrossoverResult:
    """Rabi frequency where the averaged F_sv and F curves cross.

    Secant steps are taken while they stay inside the sign-changing bracket
    and keep halving it; otherwise the bracket is bisected.
    """
    lo, hi = map(float, bracket)
    if not (0 <= lo < hi and math.isfinite(hi)):
        raise DomainError(f"invalid bracket {bracket!r}")
    if not 0 <= degree < 1:
        raise DomainError("degree of squeezing must lie in [0, 1)")
    g = _force_gap(delta, phi, degree, mode, rtol=1e-12)
    g_lo, g_hi = g(lo), g(hi)
    if g_lo == 0 and g_hi == 0:
        raise NoCrossoverError("F_sv - F vanishes at both bracket ends (degenerate bracket)")
    if g_lo * g_hi > 0:
        raise NoCrossoverError(
            f"F_sv - F keeps one sign on [{lo!r}, {hi!r}] ({g_lo:.3g}, {g_hi:.3g})")
    if g_lo == 0:
        return CrossoverResult(lo, (lo, lo), 0.0, 0)
    if g_hi == 0:
        return CrossoverResult(hi, (hi, hi), 0.0, 0)

    x0, f0, x1, f1 = lo, g_lo, hi, g_hi
    bisect_next = False
    for it in range(1, max_iter + 1):
        width = hi - lo
        x = x1 - f1 * (x1 - x0) / (f1 - f0) if f1 != f0 else math.nan
        if bisect_next or not lo < x < hi:
            x = 0.5 * (lo + hi)
        fx = g(x)
        if abs(fx) < tol:
            return CrossoverResult(x, (lo, hi), abs(fx), it)
        if (fx < 0) == (g_lo < 0):
            lo, g_lo = x, fx
        else:
            hi, g_hi = x, fx
        x0, f0, x1, f1 = x1, f1, x, fx
        bisect_next = (hi - lo) > 0.5 * width
        if hi - lo <= 4 * math.ulp(hi):
            break
    raise NumericalError(
        f"crossover search stalled at beta in [{lo!r}, {hi!r}] with |g| = {min(abs(g_lo), abs(g_hi)):.3g}")
