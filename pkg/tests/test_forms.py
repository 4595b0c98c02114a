import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyforms.forms import (
    HomogeneousPolynomial,
    MultilinearForm,
    coeff_of_Sk_closed_form,
    complex_gaussian,
    evaluate_form,
    evaluate_poly,
    full_symmetrize,
    lform_from_poly,
    partial_symmetrize,
    partial_symmetrize_closed_form,
    polarize_eval,
    random_form,
    random_polynomial,
)
from polyforms.multiindex import BudgetExceeded

from conftest import antisymmetric_form, brute_evaluate, brute_partial_symmetrize, poly

X1X2 = poly(2, 2, {(1, 2): 1})
X1SQ = poly(2, 2, {(1, 1): 1})
CUBIC = poly(2, 3, {(1, 1, 2): 1, (2, 2, 2): 2})


def test_lform_from_poly_examples():
    assert np.array_equal(lform_from_poly(X1X2).coeffs, [[0, 1], [0, 0]])
    assert np.array_equal(lform_from_poly(X1SQ).coeffs, [[1, 0], [0, 0]])
    L = lform_from_poly(CUBIC)
    expected = np.zeros((2, 2, 2))
    expected[0, 0, 1] = 1
    expected[1, 1, 1] = 2
    assert np.array_equal(L.coeffs, expected)


def test_polynomial_validation():
    with pytest.raises(ValueError):
        HomogeneousPolynomial(2, 2, {(2, 1): 1})
    with pytest.raises(ValueError):
        HomogeneousPolynomial(2, 2, {(1, 2, 2): 1})
    with pytest.raises(ValueError):
        HomogeneousPolynomial(2, 2, {(1, 3): 1})
    with pytest.raises(ValueError):
        HomogeneousPolynomial(2, 0, {})
    assert X1X2.coefficient((1, 1)) == 0


def test_form_is_immutable():
    L = lform_from_poly(X1X2)
    with pytest.raises(ValueError):
        L.coeffs[0, 0] = 5


def test_evaluate_antisymmetric_example():
    L = antisymmetric_form()
    assert evaluate_form(L, [(1, 0), (0, 1)]) == 1
    for v in [(1, 1), (2, 3j)]:
        assert evaluate_form(L, [v, v]) == 0


def test_evaluate_non_symmetry_witness():
    L = lform_from_poly(X1X2)
    assert evaluate_form(L, [(1, 0), (0, 1)]) == 1
    assert evaluate_form(L, [(0, 1), (1, 0)]) == 0
    assert L((1, 0), (0, 1)) == 1


def test_evaluate_arity_checks():
    L = lform_from_poly(X1X2)
    with pytest.raises(ValueError):
        evaluate_form(L, [(1, 0)])
    with pytest.raises(ValueError):
        evaluate_form(L, [(1, 0, 0), (1, 0, 0)])
    with pytest.raises(ValueError):
        evaluate_poly(X1X2, (1, 0, 0))


def test_evaluate_poly_examples():
    assert evaluate_poly(X1X2, (2, 3)) == 6
    assert evaluate_poly(CUBIC, (1, 1)) == 3
    assert evaluate_poly(CUBIC, (0, 0)) == 0


def test_evaluate_form_against_brute_force(rng):
    for n, m in [(2, 3), (3, 2), (3, 3)]:
        L = random_form(n, m, rng)
        args = [complex_gaussian(rng, n) for _ in range(m)]
        assert abs(evaluate_form(L, args) - brute_evaluate(L, args)) < 1e-12


def test_homogeneity(rng):
    P = random_polynomial(3, 3, rng)
    x = complex_gaussian(rng, 3)
    lam = 0.7 - 1.3j
    assert abs(evaluate_poly(P, lam * x) - lam**3 * evaluate_poly(P, x)) < 1e-12


@pytest.mark.parametrize("n,m", [(1, 3), (2, 2), (3, 3), (2, 4)])
def test_diagonal_identity(rng, n, m):
    for _ in range(5):
        P = random_polynomial(n, m, rng)
        x = complex_gaussian(rng, n)
        want = evaluate_poly(P, x)
        got = evaluate_form(lform_from_poly(P), [x] * m)
        assert abs(got - want) <= 1e-12 * max(1.0, abs(want))


def test_partial_symmetrize_examples():
    L = lform_from_poly(X1X2)
    assert partial_symmetrize(L, 1).allclose(L, 0.0)
    S = partial_symmetrize(L, 2)
    assert S.coefficient((1, 2)) == 0.5 and S.coefficient((2, 1)) == 0.5
    assert partial_symmetrize(antisymmetric_form(), 2).is_zero()


def test_full_symmetrize_examples():
    S = full_symmetrize(lform_from_poly(X1X2))
    assert np.allclose(S.coeffs, [[0, 0.5], [0.5, 0]])
    sym = MultilinearForm(2, 2, [[1, 2j], [2j, 3]])
    assert full_symmetrize(sym).allclose(sym, 0.0)
    assert full_symmetrize(lform_from_poly(X1SQ)).allclose(lform_from_poly(X1SQ), 0.0)


def test_partial_symmetrize_range():
    L = lform_from_poly(CUBIC)
    with pytest.raises(ValueError):
        partial_symmetrize(L, 0)
    with pytest.raises(ValueError):
        partial_symmetrize(L, 4)
    with pytest.raises(ValueError):
        partial_symmetrize(L, 2, method="bogus")


def test_permutation_path_guard():
    L = MultilinearForm.zeros(1, 11)
    with pytest.raises(BudgetExceeded):
        partial_symmetrize(L, 11, method="permutations")
    # auto switches to orbit grouping once k! is large
    assert partial_symmetrize(L, 11).is_zero()


@pytest.mark.parametrize("n,m", [(2, 2), (2, 3), (3, 3), (2, 4), (3, 4)])
def test_both_symmetrization_paths_match_oracle(rng, n, m):
    L = random_form(n, m, rng)
    for k in range(1, m + 1):
        oracle = brute_partial_symmetrize(L, k)
        for method in ("permutations", "orbits"):
            got = partial_symmetrize(L, k, method).coeffs
            assert np.max(np.abs(got - oracle)) <= 1e-12


def test_orbit_path_for_large_k(rng):
    L = random_form(2, 9, rng)
    a = partial_symmetrize(L, 9, "orbits")
    b = partial_symmetrize(L, 9, "permutations")
    # the 9!-term running sum accumulates a few 1e-12 of rounding
    assert a.allclose(b, 1e-11)


@pytest.mark.parametrize("n,m", [(2, 2), (2, 3), (3, 3), (2, 4)])
def test_symmetrization_properties(rng, n, m):
    L = random_form(n, m, rng)
    for k in range(1, m + 1):
        S = partial_symmetrize(L, k)
        assert partial_symmetrize(S, k).allclose(S, 1e-12)
        for perm in itertools.permutations(range(k)):
            axes = perm + tuple(range(k, m))
            assert np.max(np.abs(np.transpose(S.coeffs, axes) - S.coeffs)) <= 1e-12
    full = full_symmetrize(L)
    for k in range(1, m + 1):
        assert partial_symmetrize(full, k).allclose(full, 1e-12)


def test_polarize_eval_examples(rng):
    assert abs(polarize_eval(X1X2, [(1, 0), (0, 1)]) - 0.5) < 1e-15
    assert abs(polarize_eval(X1SQ, [(1, 0), (1, 0)]) - 1) < 1e-15
    P = random_polynomial(3, 3, rng)
    x = complex_gaussian(rng, 3)
    assert abs(polarize_eval(P, [x] * 3) - evaluate_poly(P, x)) <= 1e-10 * abs(evaluate_poly(P, x))


@pytest.mark.parametrize("n,m", [(2, 1), (2, 2), (3, 3), (2, 4), (3, 4)])
def test_polarization_matches_symmetric_form(rng, n, m):
    for _ in range(10):
        P = random_polynomial(n, m, rng)
        S = full_symmetrize(lform_from_poly(P))
        args = [complex_gaussian(rng, n) for _ in range(m)]
        want = evaluate_form(S, args)
        assert abs(polarize_eval(P, args) - want) <= 1e-10 * abs(want)


def test_polarize_eval_degree_guard():
    P = HomogeneousPolynomial(1, 21, {(1,) * 21: 1})
    with pytest.raises(BudgetExceeded):
        polarize_eval(P, [(1,)] * 21)


def test_closed_form_examples():
    assert coeff_of_Sk_closed_form(X1X2, (2, 1), 2) == 0.5
    X1SQX2 = poly(2, 3, {(1, 1, 2): 1})
    assert coeff_of_Sk_closed_form(X1SQX2, (2, 1, 1), 2) == 0
    assert coeff_of_Sk_closed_form(X1SQX2, (1, 1, 2), 2) == 1
    # and the permutation-sum oracle agrees
    oracle = brute_partial_symmetrize(lform_from_poly(X1SQX2), 2)
    assert oracle[1, 0, 0] == 0 and oracle[0, 0, 1] == 1
    with pytest.raises(ValueError):
        coeff_of_Sk_closed_form(X1X2, (1, 2), 3)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_closed_form_equals_symmetrization(n, m):
    rng = np.random.default_rng(1000 * n + m)
    for _ in range(20):
        P = random_polynomial(n, m, rng)
        L = lform_from_poly(P)
        for k in range(1, m + 1):
            closed = partial_symmetrize_closed_form(P, k).coeffs
            assert np.max(np.abs(closed - partial_symmetrize(L, k).coeffs)) <= 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 3), st.integers(2, 3))
def test_symmetrization_kills_vanishing_diagonal(seed, n, m):
    """A form whose diagonal restriction is 0 symmetrizes to the zero form."""
    r = np.random.default_rng(seed)
    L = random_form(n, m, r)
    # subtracting the symmetric part leaves a form with zero diagonal restriction
    perturbation = L.coeffs - full_symmetrize(L).coeffs
    x = complex_gaussian(r, n)
    assert abs(evaluate_form(MultilinearForm(n, m, perturbation), [x] * m)) < 1e-10
    assert full_symmetrize(MultilinearForm(n, m, perturbation)).is_zero(1e-12)


def test_from_function_constructor():
    P = HomogeneousPolynomial.from_function(2, 2, lambda j: sum(j))
    assert P.coeffs == {(1, 1): 2, (1, 2): 3, (2, 2): 4}
