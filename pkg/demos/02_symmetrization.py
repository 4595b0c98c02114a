# coding: utf-8

# # From a polynomial to its forms
#
# L_P carries P's coefficients on non-decreasing tuples and zero elsewhere.
# Averaging over the first k slots gives the partial symmetrizations S_k, and
# S_m is the unique symmetric form whose diagonal is P.

# %%
import numpy as np

from polyforms import HomogeneousPolynomial, lform_from_poly, partial_symmetrize
from polyforms.forms import evaluate_form, evaluate_poly, partial_symmetrize_closed_form, polarize_eval

P = HomogeneousPolynomial(2, 3, {(1, 1, 2): 1.0, (2, 2, 2): 2.0})
L = lform_from_poly(P)
x = np.array([0.3 + 0.4j, -1.1])
print("P(x)      =", evaluate_poly(P, x))
print("L_P(x,x,x) =", evaluate_form(L, [x, x, x]))

# %% [markdown]
# Each S_k has a closed form: c_{i*} / |[(i_1..i_k)]| when the tail is sorted
# and dominates the head, zero otherwise. It matches the permutation average.

# %%
for k in range(1, 4):
    S = partial_symmetrize(L, k)
    gap = np.abs(S.coeffs - partial_symmetrize_closed_form(P, k).coeffs).max()
    print(k, "max gap", gap)

# %% [markdown]
# Polarization recovers the fully symmetric form from values of P alone.

# %%
rng = np.random.default_rng(0)
args = [rng.normal(size=2) + 1j * rng.normal(size=2) for _ in range(3)]
S3 = partial_symmetrize(L, 3)
print(polarize_eval(P, args), evaluate_form(S3, args))
