"""Batched panel-doubling Gauss-Legendre quadrature.

Each integrand in the batch is refined independently: level ``L`` uses
``2**L`` equal panels with a fixed Gauss-Legendre rule on each, and an
element is accepted at the first ``n`` where the ``2**n`` and ``2**(n+1)``
panel estimates agree to ``rtol``. The finer estimate is returned. Because
every element's arithmetic depends only on its own samples, results are
bit-identical however the batch is split.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import QuadratureError

MAX_LEVEL = 16  # 2**16 panels
_MAX_BLOCK = 1 << 22  # samples evaluated per func call


@lru_cache(maxsize=None)
def _panel_rule(order: int, level: int):
    """Nodes/weights of the composite rule on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(order)
    panels = 1 << level
    left = np.arange(panels, dtype=float) / panels
    nodes = (left[:, None] + (x[None, :] + 1.0) / (2.0 * panels)).ravel()
    weights = np.tile(w / (2.0 * panels), panels)
    return nodes, weights


def _estimate(func, idx, a, b, order, level):
    nodes, weights = _panel_rule(order, level)
    x = a + (b - a) * nodes
    out = np.empty(idx.size)
    rows = max(1, _MAX_BLOCK // x.size)
    for start in range(0, idx.size, rows):
        sub = idx[start:start + rows]
        vals = np.asarray(func(sub, x), dtype=float)
        out[start:start + rows] = (vals * weights).sum(axis=1)
    return (b - a) * out


def integrate_batch(func, a, b, size, rtol=1e-9, order=8, min_level=2, max_level=MAX_LEVEL):
    """Integrate ``size`` functions over ``[a, b]``.

    ``func(idx, x)`` returns an array of shape ``(len(idx), len(x))`` with
    integrand ``i`` sampled at ``x`` for every ``i`` in ``idx``.

    Returns ``(values, panels)`` where ``panels`` is the accepted panel count
    per element.
    """
    values = np.full(size, np.nan)
    panels = np.zeros(size, dtype=np.int64)
    active = np.arange(size)
    coarse = _estimate(func, active, a, b, order, min_level)
    for level in range(min_level + 1, max_level + 1):
        fine = _estimate(func, active, a, b, order, level)
        diff = np.abs(fine - coarse)
        done = diff <= rtol * np.abs(fine)
        values[active[done]] = fine[done]
        panels[active[done]] = 1 << level
        active, coarse = active[~done], fine[~done]
        if active.size == 0:
            return values, panels
    worst = float(np.max(diff[~done] / np.abs(coarse)))
    raise QuadratureError(
        f"{active.size} integrand(s) unconverged at {1 << max_level} panels "
        f"(achieved rtol {worst:.3g})",
        achieved_rtol=worst,
        panels=1 << max_level,
    )
