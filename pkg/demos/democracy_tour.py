# Democracy functions of the bundled spaces.
#
# Run with: python3 demos/democracy_tour.py

# %%
from greedylab.democracy import h_l, h_r, h_restricted, characteristic_psi
from greedylab.spaces import DifferenceL1, MixNorm, SchreierMod, SummingC0

spaces = [SummingC0(), DifferenceL1(), SchreierMod(), MixNorm()]

# %% [markdown]
# h_r(m) is the largest signed indicator of size m, h_l(m) the smallest.
# The summing basis is the extreme case: all plus signs give m, alternating
# signs give 1.

# %%
print(f"{'space':14s}" + "".join(f"  m={m:<7d}" for m in range(1, 7)))
for sp in spaces:
    cells = []
    for m in range(1, 7):
        cells.append(f"{h_l(sp, m, 24).value:4.2f}/{h_r(sp, m, 24).value:<4.2f}")
    print(f"{sp.name:14s}" + "".join(f"  {c:9s}" for c in cells))

# %% [markdown]
# Restricted versions look only left or right of a cut u.  For the difference
# basis the left value depends on whether signs are allowed: with plus signs
# it is 2u-2m+1 until u reaches 2m.

# %%
sp = DifferenceL1()
for signs in ("plus", "all"):
    row = [h_restricted(sp, 3, u, "left", signs=signs).value for u in range(3, 9)]
    print(f"h_Rl(3, u), signs={signs}:", row)
print("h_Rr(3, u):", [h_restricted(sp, 3, u, "right").value for u in range(3, 9)])

# %%
rep = h_r(SchreierMod(), 4, 40)
print("Schreier h_r(4) witness:", rep.witness.indices, "value", rep.value)
print("characteristic psi(3) for the summing basis:", characteristic_psi(SummingC0(), 3, 20))
