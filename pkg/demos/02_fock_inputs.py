# %% [markdown]
# # Fock-state inputs
#
# Seeding the signal with |m> changes the output spectrum to
# p_k = (1-t)^(m+1) C(k+m, k) t^k. Below: the spectrum, the moments via the
# generalized polylogarithm, and two independent entropy routes.

# %%
import numpy as np

from opa_entropy import SqueezeParams, oracle, replica

p = SqueezeParams(0.8)

# %%
for m in range(4):
    closed = np.sort(replica.fock_spectrum(p, m, 400))[::-1]
    eig = oracle.output_spectrum(p, m).eigenvalues
    print(f"m={m}: top eigenvalues {np.round(eig[:4], 6)}, max deviation {np.max(np.abs(eig - closed[:len(eig)])):.1e}")

# %% [markdown]
# Moments tr(rho^n) from the polylog expression, checked against the
# oracle spectrum.

# %%
spec = oracle.output_spectrum(p, 3)
for n in range(1, 7):
    print(n, replica.fock_moment(p, 3, n), oracle.spectral_moment(spec, n))

# %% [markdown]
# The series route and the moment-derivative route for S_m.

# %%
for m in range(6):
    a = replica.fock_entropy(p, m).value
    b = replica.fock_entropy_polylog(p, m).value
    print(f"m={m}  series {a:.12f}  derivative {b:.12f}")
