# %% [markdown]
# # Squeezed-light parameters
#
# A squeezed vacuum is described by its photon number N, the two-photon
# correlation |M| and a phase. Ideal states come from a single squeeze
# factor r; the degree of squeezing 2(|M| - N) = 1 - exp(-2r).

# %%
import math

import numpy as np

from squeezeforce import (
    OpoConfig,
    decay_rates,
    degree_of_squeezing,
    opo_spectrum,
    squeeze_from_degree,
    validate_moments,
)

# %% 75 % squeezing: N = 9/16, |M| = 15/16, r = ln 2
p = squeeze_from_degree(0.75)
print(f"r = {p.r:.6f} (ln 2 = {math.log(2):.6f})")
print(f"N = {p.n_photons:.6f}, |M| = {p.m_corr:.6f}, degree = {degree_of_squeezing(p):.6f}")

# %% The dipole quadrature aligned with the noisy field quadrature decays four
# times faster than in vacuum at this squeezing level; the quiet one four times slower.
rates = decay_rates(p)
print(f"gamma_x = {rates.gamma_x:.4f} gamma, gamma_y = {rates.gamma_y:.4f} gamma")

# %% Lossy squeezing sits strictly inside the quantum bound M^2 <= N(N+1).
print(validate_moments(9 / 16, 0.9))
print(validate_moments(0.0, 0.1))

# %% Ideal OPO output: Lorentzian spectra that saturate the bound at every frequency.
opo = OpoConfig(kappa=2.0, epsilon=0.5)
omega = np.linspace(-5, 5, 11)
n_w, m_w = opo_spectrum(opo, omega)
for w, n, m in zip(omega, n_w, m_w):
    print(f"omega={w:+5.1f}  N={n:.5f}  M={m:.5f}  M^2-N(N+1)={m * m - n * (n + 1):+.1e}")
