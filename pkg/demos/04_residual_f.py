# %% [markdown]
# # The residual F^(m)(n)
#
# tr(rho^n) of a superposition output splits into explicitly known terms
# and a residual F. Here F is read off the exact moments, checked for its
# polynomial dependence on z^2, and its slope at n = 1 is measured. That
# slope is exactly what separates the true entropy from the weighted law.

# %%
import numpy as np

from opa_entropy import SqueezeParams, VacuumFockInput, oracle, replica

p = SqueezeParams(0.8)

# %%
for z in (0.5, 1.0, 2.0):
    st = VacuumFockInput(1, z)
    row = [oracle.extract_f(p, st, n).f_value for n in (1, 2, 3)]
    print(f"z={z}: F(1), F(2), F(3) = {np.round(row, 10)}")

# %% [markdown]
# F(2) should be a multiple of z^2. The ratio below is constant in z.

# %%
for z in (0.5, 1.0, 1.5, 2.0):
    print(z, oracle.extract_f(p, VacuumFockInput(2, z), 2).f_value / z**2)

# %% [markdown]
# dF/dn at n = 1 times 1/(1+z^2) is the entropy gap.

# %%
st = VacuumFockInput(1, 1.0)
slope = oracle.f_slope_at_one(p, st)
exact = oracle.spectral_entropy(oracle.output_spectrum(p, st)).value
law = replica.superposition_entropy(p, st).value
print("slope / (1 + z^2):", slope / 2, "  law - exact:", law - exact)
