# %% [markdown]
# # The replica trick on classical distributions
#
# S = -d/dn sum P^n at n = 1 also works for ordinary distributions.

# %%
import math

from opa_entropy import classical

for sigma in (0.5, 1.0, 2.0):
    fd = classical.gaussian_moments(sigma).replica_entropy(step=1e-6)
    print(f"sigma={sigma}: replica {fd:.10f}   0.5 ln(2 pi e sigma^2) {0.5 * math.log(2 * math.pi * math.e * sigma**2):.10f}")

# %%
for lam in (0.5, 1.0, 4.0):
    print(f"lambda={lam}: series {classical.poisson_entropy_series(lam):.12f}"
          f"  -sum p ln p {classical.poisson_entropy_derivative(lam):.12f}")

# %% [markdown]
# A narrow Gaussian has negative differential entropy, which is why its
# moments are not treated as a Hausdorff sequence.

# %%
print(classical.gaussian_entropy_replica(0.05))
