# %% [markdown]
# # Force against squeezing and phase
#
# Signed average of F_sv at beta = 10 over the degree of squeezing and the
# squeezed-coherent phase. At resonance the surface vanishes for classical
# light and for phi = 0, and flips sign with phi.

# %%
import numpy as np

from squeezeforce import fig2_surface

for delta in (0.0, 0.1):
    rows = fig2_surface(delta=delta)
    force = np.array([r.force for r in rows]).reshape(96, 128)
    degree = np.array([r.degree for r in rows[::128]])
    phi = np.array([r.phi for r in rows[:128]])
    i, j = np.unravel_index(np.argmax(force), force.shape)
    print(f"Delta = {delta}: max F_sv = {force[i, j]:.4f} at degree {degree[i]:.2f}, phi = {phi[j] / np.pi:.3f} pi")
    print(f"  min F_sv = {force.min():.4f}")

    try:
        import matplotlib.pyplot as plt
    except ImportError:
        continue
    plt.figure()
    plt.pcolormesh(phi / np.pi, degree, force, shading="auto", cmap="RdBu_r")
    plt.colorbar(label="F_sv [hbar k gamma / 2]")
    plt.xlabel("phi / pi")
    plt.ylabel("degree of squeezing")
    plt.savefig(f"fig2_delta{delta}.png", dpi=120)
