# coding: utf-8

# # One symmetrization step as a Schur product
#
# Undoing one slot of symmetrization is an entrywise multiplication:
# S_{k-1} L_P = A^k (.) S_k L_P, where A^k is k/u on tuples whose head is
# bounded by i_k (which occurs u times there) and 0 elsewhere.

# %%
import numpy as np

from polyforms import lform_from_poly, partial_symmetrize, random_polynomial
from polyforms.schur import apply_Ak_step, matrix_Ak_direct, matrix_Ak_factored, matrix_Aku, ones

print(np.real(matrix_Ak_direct(2, 2, 2).entries))

# %% [markdown]
# A^k also factors through the 0/1 pieces A^{k,u}, each of which is a
# product of "equal" and "less or equal" patterns between slots.

# %%
n, m = 3, 4
for k in range(1, m + 1):
    gap = np.abs(matrix_Ak_factored(k, n, m).entries - matrix_Ak_direct(k, n, m).entries).max()
    total = sum((matrix_Aku(k, u, n, m) for u in range(2, k + 1)), matrix_Aku(k, 1, n, m))
    print(k, "factored vs direct", gap, "| pieces sum to ones:", total.allclose(ones(n, m)))

# %%
P = random_polynomial(n, m, np.random.default_rng(3))
L = lform_from_poly(P)
for k in range(2, m + 1):
    gap = np.abs(apply_Ak_step(P, k).coeffs - partial_symmetrize(L, k - 1).coeffs).max()
    print("step", k, "gap", gap)
