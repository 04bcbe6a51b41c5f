# %% [markdown]
# # Force along a standing wave
#
# The Rabi frequency varies as cos(kx). The local force (units hbar k gamma/2)
# is odd about each node, so spatial averages are taken of its magnitude.

# %%
import numpy as np

from squeezeforce import (
    AveragingMode,
    Config,
    DriveParams,
    FieldGeometry,
    averaged_force,
    doppler_limit_temperature,
    local_force,
    squeeze_from_degree,
)

geo = FieldGeometry()  # Cs D2, 852 nm
p = squeeze_from_degree(0.75, 0.8 * np.pi)
drive = DriveParams(beta=10.0, delta=0.0)

# %% Local force over half a wavelength.
x = np.linspace(0, geo.wavelength / 2, 9)
for xi, f in zip(x, local_force(geo, p, drive, x, Config.SVSC)):
    print(f"kx/pi = {geo.k * xi / np.pi:.3f}   F = {f:+.4f}")

# %% The three averaging prescriptions.
for mode in AveragingMode:
    sv = averaged_force(geo, p, drive, Config.SVSC, mode)
    sc = averaged_force(geo, p, drive, Config.SC, mode)
    print(f"{mode.value:14s} F_sv = {sv:.5f}   F = {sc:.5f}")

# %% Doppler reference for Cs (gamma / 2 pi = 5.22 MHz).
t_d = doppler_limit_temperature(2 * np.pi * 5.22e6)
print(f"T_D = {t_d * 1e6:.1f} uK")
