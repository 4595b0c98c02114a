"""Non-symmetric forms of homogeneous polynomials, their partial symmetrizations,
m-dimensional Schur multipliers, and desk-scale sup-norm estimates."""

from .forms import (
    HomogeneousPolynomial,
    MultilinearForm,
    coeff_of_Sk_closed_form,
    evaluate_form,
    evaluate_poly,
    full_symmetrize,
    lform_from_poly,
    partial_symmetrize,
    polarize_eval,
    random_polynomial,
)
from .multiindex import BudgetExceeded, MultiIndex
from .norms import NormEstimate, NormSpec, form_norm_bracket, form_norm_lower, poly_norm_bracket, poly_norm_lower
from .schur import SchurMultiplier, schur_product

__version__ = "0.1.0"
