# %% [markdown]
# # Steady-state Bloch component sigma_Y
#
# sigma_Y sets the standing-wave force. Two driving configurations:
# squeezed-coherent light alone (SC), and with a squeezed-vacuum reservoir
# whose noisy or quiet quadrature damps the dipole (SVSC).

# %%
import math

from squeezeforce import DriveParams, Quadrature, SqueezeParams, sigma_y_sc, sigma_y_svsc, squeeze_from_r

# %% Classical light: the familiar dispersive two-level response.
vacuum = squeeze_from_r(0.0)
for delta in (-0.5, 0.0, 0.5):
    print(f"Delta={delta:+.1f}  SC sigma_Y = {sigma_y_sc(vacuum, DriveParams(1.0, delta)).value:+.4f}")

# %% With 75 % squeezing and phase pi/2 the response survives at zero detuning.
p = SqueezeParams(9 / 16, 15 / 16, math.pi / 2)
drive = DriveParams(beta=1.0, delta=0.0)
print("SC   ", sigma_y_sc(p, drive).value, "= 5/17")
print("SVSC ", sigma_y_svsc(p, drive).value, "= 6/17")
print("quiet", sigma_y_svsc(p, DriveParams(1.0, 0.0, Quadrature.QUIET)).value)

# %% Sign follows the phase at resonance.
for phi in (-math.pi / 2, 0.0, math.pi / 2):
    q = SqueezeParams(9 / 16, 15 / 16, phi)
    print(f"phi={phi:+.3f}  SVSC sigma_Y = {sigma_y_svsc(q, drive).value:+.4f}")
