# coding: utf-8

# # Estimating sup-norms of forms
#
# Alternating maximization gives a lower bound with a witness. On the
# sup-norm polydisc a phase grid gives a certified bracket.

# %%
import math

import numpy as np

from polyforms import MultilinearForm, NormSpec
from polyforms.norms import form_norm_bracket, form_norm_lower, poly_norm_bracket, poly_norm_lower
from polyforms.forms import HomogeneousPolynomial

L = MultilinearForm.from_entries(2, 2, {(1, 2): 1, (2, 1): -1})
sup = NormSpec.lp(math.inf, 2)
est = form_norm_lower(L, sup, seed=1)
print("alternating lower:", est.lower)
print("witness:", [np.round(x, 3) for x in est.witness])

# %%
for G in (16, 64, 360):
    br = form_norm_bracket(L, sup, angular_resolution=G)
    print(f"G={G:4d}  [{br.lower:.6f}, {br.upper:.6f}]")

# %% [markdown]
# Other l_p norms only get lower estimates. For l_2 the norm of a 2-form is
# the largest singular value of its coefficient matrix.

# %%
l2 = NormSpec.lp(2, 2)
print(form_norm_lower(L, l2, seed=2).lower, np.linalg.norm(L.coeffs, 2))

# %%
P = HomogeneousPolynomial(2, 2, {(1, 1): 1, (1, 2): 1j, (2, 2): -0.5})
print(poly_norm_lower(P, sup, seed=3).lower, poly_norm_bracket(P, sup).upper)
