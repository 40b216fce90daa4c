# Greedy, Chebyshev-greedy and best m-term errors on a small vector.
#
# Run with: python3 demos/greedy_errors.py

# %%
import numpy as np

from greedylab.chebyshev import chebyshev_project, sigma_profile, theta_profile
from greedylab.greedy import gamma, greedy_sets
from greedylab.spaces import Lp, SparseVector, SummingC0

x = SparseVector.from_dense([2.0, -1.0, 1.0, 1.0, -0.5, 0.25])
print("x =", dict(x.items()))

# %% [markdown]
# Ties among the moduli give several greedy sets.  gamma takes the worst of
# them; theta re-fits the coefficients on each set first.

# %%
for m in range(1, 4):
    print(m, greedy_sets(x, m).sets)

# %%
for sp in (SummingC0(), Lp(2)):
    s = len(x)
    sg = sigma_profile(sp, x, s, window=4)
    th, _ = theta_profile(sp, x, s)
    g = np.array([gamma(sp, x, m) for m in range(s + 1)])
    print(sp.name)
    for m in range(s + 1):
        print(f"  m={m}  sigma={sg[m]:.4f}  theta={th[m]:.4f}  gamma={g[m]:.4f}")

# %% [markdown]
# A single Chebyshev projection: for the summing basis the best coefficient on
# {1} is the midpoint of the partial-sum range.

# %%
sol = chebyshev_project(SummingC0(), SparseVector.from_dense([1, 1]), [1])
print(sol.coefficients, sol.residual, sol.method)
