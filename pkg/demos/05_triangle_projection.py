# coding: utf-8

# # The main triangle projection
#
# Keeping only the upper triangle of a bilinear form can increase its sup-norm
# by a factor that grows like log n. Sampled forms give lower estimates of
# that factor; the diagonal projection never increases the norm.

# %%
import math

from polyforms import NormSpec
from polyforms.norms import identity_matrix, schur_mu_lower, triangle_projection_matrix

print(" n   mu(T_n)   log2(2n)   mu(I_n)")
for n in range(2, 9):
    spec = NormSpec.lp(math.inf, n)
    t = schur_mu_lower(triangle_projection_matrix(n), spec, trials=40, seed=n)
    d = schur_mu_lower(identity_matrix(n), spec, trials=40, seed=n)
    print(f"{n:2d}   {t:.4f}    {math.log2(2 * n):.4f}     {d:.4f}")

# %% [markdown]
# The same sweep for p = 1 and 1.5 is what `verify triangle --p 1 1.5` reports.
