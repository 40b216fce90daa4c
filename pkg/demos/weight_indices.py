# Dilation indices and regularity of a few weights.
#
# Run with: python3 demos/weight_indices.py

# %%
from greedylab.weights import dilation_indices, equiv_ratio, make_weight, regularity_check

for spec in ("power:0.25", "sqrt", "power:1", "sqrt*log", "log"):
    rep = dilation_indices(make_weight(spec), 2**10, 2**12)
    print(f"{spec:11s} i_hat={rep.i_hat:.4f} I_hat={rep.I_hat:.4f}  "
          f"(sup/inf over M: {rep.i_sup:.4f} / {rep.I_inf:.4f})")

# %% [markdown]
# For sqrt(n) log(n+1) the upper estimate log Phi(M)/log M falls towards 1/2
# like 1/2 + log log M / log M, far too slowly to reach 0.6 at M = 2^10.

# %%
w = make_weight("sqrt*log")
for Mmax in (2**4, 2**7, 2**10):
    print(Mmax, round(dilation_indices(w, Mmax, 2**12).I_hat, 4))

# %%
print(regularity_check(make_weight("sqrt"), 0.25, "LRP"))
print("equivalence ratio sqrt:", equiv_ratio(make_weight("sqrt"), 4096))
print("equivalence ratio log: ", equiv_ratio(make_weight("log"), 4096))
