import math

import numpy as np
import pytest

from squeezeforce.errors import QuadratureError
from squeezeforce.quadrature import _estimate, integrate_batch


def family(scales):
    scales = np.asarray(scales, dtype=float)
    return lambda idx, x: 1.0 / (1.0 + (scales[idx, None] * x) ** 2)


def test_known_integrals():
    scales = np.array([0.5, 1.0, 10.0, 100.0])
    vals, panels = integrate_batch(family(scales), 0.0, 1.0, scales.size)
    np.testing.assert_allclose(vals, np.arctan(scales) / scales, rtol=1e-12)
    assert np.all(panels >= 8)


def test_polynomial_exact_at_minimum_level():
    vals, panels = integrate_batch(lambda idx, x: np.tile(x**15, (idx.size, 1)), 0.0, 2.0, 1)
    assert vals[0] == pytest.approx(2.0**16 / 16, rel=1e-14)
    assert panels[0] == 8


def test_convergence_invariant():
    scales = np.linspace(1, 200, 25)
    f = family(scales)
    vals, panels = integrate_batch(f, 0.0, 1.0, scales.size, rtol=1e-9)
    for i, p in enumerate(panels):
        level = int(math.log2(p))
        idx = np.array([i])
        fine = _estimate(f, idx, 0.0, 1.0, 8, level)[0]
        coarse = _estimate(f, idx, 0.0, 1.0, 8, level - 1)[0]
        assert fine == vals[i]
        assert abs(fine - coarse) < 1e-9 * abs(fine)


def test_split_invariance():
    scales = np.linspace(1, 300, 97)
    whole, _ = integrate_batch(family(scales), 0.0, 1.0, scales.size)
    parts = np.concatenate([integrate_batch(family(scales[i:i + 10]), 0.0, 1.0, scales[i:i + 10].size)[0]
                            for i in range(0, scales.size, 10)])
    assert whole.tobytes() == parts.tobytes()


def test_zero_integrand():
    vals, _ = integrate_batch(lambda idx, x: np.zeros((idx.size, x.size)), 0.0, 1.0, 3)
    assert np.all(vals == 0)


def test_refinement_cap():
    with pytest.raises(QuadratureError) as info:
        integrate_batch(lambda idx, x: np.tile(x ** -0.5, (idx.size, 1)), 0.0, 1.0, 1,
                        rtol=1e-15, max_level=6)
    assert info.value.panels == 64
    assert info.value.achieved_rtol > 1e-15
