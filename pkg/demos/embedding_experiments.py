# The quantitative embedding experiments.
#
# Run with: python3 demos/embedding_experiments.py  (about ten seconds)

# %%
import math

from greedylab.classes import imp1_experiment, kppg_experiment, precursor_ratio, remark_ratio
from greedylab.spaces import MixNorm, SummingC0
from greedylab.weights import make_weight

w = make_weight("sqrt")

# %% [markdown]
# Basis vectors e_{m+1}: the G to PG ratio is pinned under 1/(w(1) H_m^(1/2)).

# %%
for r in remark_ratio(SummingC0(), w, 2.0, [1, 2, 4, 8, 16, 31, 50]):
    print(f"m={r.j:3d} ratio={r.ratio:.4f} bound={r.bound:.4f}")

# %% [markdown]
# Summing basis, x_j = 2 1_{eps Gamma_l} + 1_{Gamma_r}: the CG norm outgrows the
# A norm by roughly a factor two per step.

# %%
for r in imp1_experiment(SummingC0(), w, math.inf, j_max=6):
    print(f"j={r.j} k={r.k} eta={r.eta} ratio={r.ratio:.3f} flags={r.flags}")

# %% [markdown]
# MixNorm: the G/PG ratio for the even/odd construction.  At these sizes it
# drifts down instead of up, and the indicator ratio grows only like
# sqrt(log N).

# %%
for r in kppg_experiment(MixNorm(), w, math.inf, j_max=4):
    print(f"j={r.j} u={r.u} eta={r.eta} ratio={r.ratio:.4f}")
for N in (4, 8, 16, 32, 64, 1024, 2**16):
    print(f"N={N:6d} indicator ratio {precursor_ratio(MixNorm(), N):.4f}")
