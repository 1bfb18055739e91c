# %% [markdown]
# # Amplifying the vacuum
#
# A two-mode squeezer driven by vacuum leaves the signal mode in a thermal
# state with mean photon number sinh^2|xi|. Its trace moments have a closed
# form, and its entropy is the familiar g(N).

# %%
import numpy as np

from opa_entropy import SqueezeParams, g_function, oracle, replica

p = SqueezeParams(1.0)
print(f"t = |tau|^2 = {p.tau_sq:.6f}, N = {p.mean_photons:.6f}, gain = {p.gain:.6f}")

# %% [markdown]
# The closed-form moments next to the numerically diagonalized output state.

# %%
spec = oracle.output_spectrum(p, 0)
for n in range(1, 6):
    print(n, replica.thermal_moment(p, n), oracle.spectral_moment(spec, n))

# %%
print("S closed form:", replica.thermal_entropy(p).value)
print("g(N)         :", g_function(p.mean_photons))
print("S oracle     :", oracle.spectral_entropy(spec).value)

# %% [markdown]
# Entropy grows roughly linearly in |xi| once the gain is large.

# %%
for xi in np.linspace(0, 3, 7):
    print(f"{xi:4.1f}  {replica.thermal_entropy(SqueezeParams(xi)).value:.6f}")
