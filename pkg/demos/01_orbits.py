# coding: utf-8

# # Multi-indices and their orbits
#
# Coefficients of an m-form on C^n live on tuples i = (i_1, ..., i_m) with
# entries in 1..n. A homogeneous polynomial only needs the non-decreasing ones,
# and every tuple is a permutation of exactly one of those.

# %%
from polyforms.multiindex import (
    canonicalize,
    enumerate_indices,
    enumerate_nondecreasing,
    multiplicity_at_tail,
    orbit_size,
)

n, m = 3, 3
full = list(enumerate_indices(n, m))
sorted_ones = list(enumerate_nondecreasing(n, m))
print(len(full), "tuples,", len(sorted_ones), "of them non-decreasing")

# %% [markdown]
# The orbit of i has m!/prod(alpha_l!) elements, alpha_l counting how often l
# appears. Summing over the non-decreasing representatives recovers n^m.

# %%
for j in sorted_ones[:5]:
    print(j, orbit_size(j))
print("total:", sum(orbit_size(j) for j in sorted_ones), "=", n**m)

# %% [markdown]
# Growing a prefix one slot at a time multiplies the orbit size by k and
# divides by how often the new last entry already occurs.

# %%
i = (2, 1, 2)
for k in range(2, m + 1):
    before, after = orbit_size(i[: k - 1]), orbit_size(i[:k])
    print(k, before, after, after * multiplicity_at_tail(i, k) == before * k)
print(canonicalize(i))
