# %% [markdown]
# # Hausdorff positivity of trace moments
#
# Moments of a spectrum inside [0, 1] form a completely monotone sequence:
# every alternating finite difference is nonnegative. A closed form that
# produced a bad moment would show up here.

# %%
from opa_entropy import SqueezeParams, VacuumFockInput, classical, oracle, replica

p = SqueezeParams(1.2)
for st in (0, 2, VacuumFockInput(3, 1.5)):
    seq = oracle.spectral_moments(oracle.output_spectrum(p, st), 16)
    rep = oracle.hausdorff_check(seq, 8, 8)
    print(st, "passed" if rep.passed else f"failed at {rep.witness}")

# %% [markdown]
# Closed-form Fock moments and Poisson moments pass too.

# %%
print(oracle.hausdorff_check(replica.fock_moments(p, 4, 16), 8, 8).passed)
print(oracle.hausdorff_check(classical.poisson_moments(1.0).sequence(12), 6, 6).passed)

# %% [markdown]
# A fabricated sequence that rises is caught with a witness (n, k).

# %%
bad = replica.MomentSequence(tuple(range(1, 6)), (1.0, 0.5, 0.6, 0.2, 0.1), "closed_form")
print(oracle.hausdorff_check(bad, 2))
