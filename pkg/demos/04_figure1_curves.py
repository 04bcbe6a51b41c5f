# %% [markdown]
# # Force against Rabi frequency
#
# Solid: squeezed vacuum in the noisy quadrature. Dotted: quiet quadrature.
# Dashed: squeezed-coherent drive without the squeezed vacuum. 75 %
# squeezing, phi = 0.8 pi, on resonance and at Delta = 0.1.

# %%
import numpy as np

from squeezeforce import fig1_curves, find_crossover

for delta in (0.0, 0.1):
    rows = fig1_curves(delta=delta)
    beta = np.array([r.beta for r in rows[0::3]])
    solid, dotted, dashed = (np.array([r.force for r in rows[i::3]]) for i in range(3))
    res = find_crossover(delta=delta)
    print(f"Delta = {delta}: F_sv overtakes F at beta* = {res.beta_star:.4f}")
    for b in (1, 3, 5, 10, 20):
        i = int(np.argmin(np.abs(beta - b)))
        print(f"  beta={beta[i]:5.2f}  solid={solid[i]:.4f}  dotted={dotted[i]:.4f}  dashed={dashed[i]:.4f}")

    try:
        import matplotlib.pyplot as plt
    except ImportError:
        continue
    plt.figure()
    plt.plot(beta, solid, "-", label="F_sv, noisy")
    plt.plot(beta, dotted, ":", label="F_sv, quiet")
    plt.plot(beta, dashed, "--", label="F")
    plt.xlabel("beta")
    plt.ylabel("force [hbar k gamma / 2]")
    plt.legend()
    plt.savefig(f"fig1_delta{delta}.png", dpi=120)
