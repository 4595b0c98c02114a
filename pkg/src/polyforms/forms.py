"""Homogeneous polynomials, their associated non-symmetric forms, and symmetrization."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import factorial

import numpy as np

from .multiindex import (
    BudgetExceeded,
    MultiIndex,
    canonicalize,
    check_budget,
    enumerate_nondecreasing,
    index_grid,
    is_nondecreasing,
    orbit_size,
)

__all__ = [
    "HomogeneousPolynomial",
    "MultilinearForm",
    "lform_from_poly",
    "evaluate_form",
    "evaluate_poly",
    "partial_symmetrize",
    "full_symmetrize",
    "polarize_eval",
    "coeff_of_Sk_closed_form",
    "partial_symmetrize_closed_form",
    "random_polynomial",
    "random_form",
    "complex_gaussian",
]

#: Above this many permutations ``partial_symmetrize`` switches to orbit grouping.
PERMUTATION_SUM_LIMIT = 10**5
#: Largest k for which the explicit k!-term sum may be requested.
MAX_PERMUTATION_K = 10
#: Largest degree accepted by the 2**m-term polarization sum.
MAX_POLARIZATION_DEGREE = 20


def complex_gaussian(rng: np.random.Generator, size) -> np.ndarray:
    """Standard complex normal samples (E|z|^2 = 1)."""
    re = rng.standard_normal(size)
    im = rng.standard_normal(size)
    return (re + 1j * im) / np.sqrt(2.0)


@dataclass(frozen=True)
class HomogeneousPolynomial:
    """``P(x) = sum_j c_j x_{j_1} ... x_{j_m}`` over non-decreasing ``j``.

    Missing keys are zero coefficients.
    """

    n: int
    m: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError(f"need n >= 1 and m >= 1, got n={self.n}, m={self.m}")
        clean = {}
        for key, value in self.coeffs.items():
            key = MultiIndex(key, self.n)
            if len(key) != self.m:
                raise ValueError(f"index {tuple(key)} does not have length {self.m}")
            if not is_nondecreasing(key):
                raise ValueError(f"index {tuple(key)} is not non-decreasing")
            clean[tuple(key)] = complex(value)
        object.__setattr__(self, "coeffs", clean)

    def coefficient(self, j) -> complex:
        return self.coeffs.get(tuple(j), 0j)

    def __call__(self, x) -> complex:
        return evaluate_poly(self, x)

    @classmethod
    def from_function(cls, n: int, m: int, coefficient) -> "HomogeneousPolynomial":
        return cls(n, m, {tuple(j): coefficient(j) for j in enumerate_nondecreasing(n, m)})


@dataclass(frozen=True, eq=False)
class MultilinearForm:
    """An m-linear form on C^n stored as its dense ``(n,) * m`` coefficient tensor.

    ``coeffs[i_1 - 1, ..., i_m - 1] = L(e_{i_1}, ..., e_{i_m})``.
    """

    n: int
    m: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError(f"need n >= 1 and m >= 1, got n={self.n}, m={self.m}")
        arr = np.array(self.coeffs, dtype=complex)
        if arr.shape != (self.n,) * self.m:
            raise ValueError(f"coefficient tensor has shape {arr.shape}, expected {(self.n,) * self.m}")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def zeros(cls, n: int, m: int, budget: int | None = None) -> "MultilinearForm":
        check_budget(n**m, budget)
        return cls(n, m, np.zeros((n,) * m, dtype=complex))

    @classmethod
    def from_entries(cls, n: int, m: int, entries: dict, budget: int | None = None) -> "MultilinearForm":
        check_budget(n**m, budget)
        arr = np.zeros((n,) * m, dtype=complex)
        for key, value in entries.items():
            key = MultiIndex(key, n)
            if len(key) != m:
                raise ValueError(f"index {tuple(key)} does not have length {m}")
            arr[tuple(t - 1 for t in key)] = value
        return cls(n, m, arr)

    def coefficient(self, i) -> complex:
        return complex(self.coeffs[tuple(t - 1 for t in i)])

    def __call__(self, *args) -> complex:
        return evaluate_form(self, args)

    def is_zero(self, atol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.coeffs) <= atol))

    def allclose(self, other: "MultilinearForm", atol: float = 1e-12) -> bool:
        return self.coeffs.shape == other.coeffs.shape and bool(
            np.max(np.abs(self.coeffs - other.coeffs), initial=0.0) <= atol
        )


def lform_from_poly(P: HomogeneousPolynomial, budget: int | None = None) -> MultilinearForm:
    """The form carrying P's coefficients on non-decreasing indices and zero elsewhere."""
    return MultilinearForm.from_entries(P.n, P.m, P.coeffs, budget)


def _check_vectors(n: int, m: int, args) -> list:
    if len(args) != m:
        raise ValueError(f"expected {m} argument vectors, got {len(args)}")
    vecs = [np.asarray(x, dtype=complex) for x in args]
    for x in vecs:
        if x.shape != (n,):
            raise ValueError(f"argument has shape {x.shape}, expected ({n},)")
    return vecs


def evaluate_form(L: MultilinearForm, args) -> complex:
    """``sum_i c_i(L) x1_{i_1} ... xm_{i_m}``."""
    vecs = _check_vectors(L.n, L.m, args)
    out = L.coeffs
    for x in vecs:
        out = np.tensordot(x, out, axes=(0, 0))
    return complex(out)


def evaluate_poly(P: HomogeneousPolynomial, x) -> complex:
    x = np.asarray(x, dtype=complex)
    if x.shape != (P.n,):
        raise ValueError(f"argument has shape {x.shape}, expected ({P.n},)")
    total = 0j
    for j in sorted(P.coeffs):
        term = P.coeffs[j]
        for t in j:
            term *= x[t - 1]
        total += term
    return complex(total)


def _symmetrize_by_permutations(arr: np.ndarray, k: int) -> np.ndarray:
    m = arr.ndim
    rest = tuple(range(k, m))
    acc = np.zeros_like(arr)
    for perm in itertools.permutations(range(k)):
        acc += np.transpose(arr, perm + rest)
    return acc / factorial(k)


def _symmetrize_by_orbits(arr: np.ndarray, n: int, k: int) -> np.ndarray:
    # Average each row over the prefixes sharing its sorted representative.
    m = arr.ndim
    rows = arr.reshape(n**k, n ** (m - k))
    keys = np.sort(index_grid(n, k), axis=1)
    _, inverse = np.unique(keys, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    groups = inverse.max() + 1
    sums = np.zeros((groups, rows.shape[1]), dtype=complex)
    np.add.at(sums, inverse, rows)
    counts = np.bincount(inverse, minlength=groups).astype(float)
    return (sums[inverse] / counts[inverse, None]).reshape(arr.shape)


def partial_symmetrize(L: MultilinearForm, k: int, method: str = "auto") -> MultilinearForm:
    """Average ``L`` over all permutations of its first ``k`` slots.

    ``method`` is ``"permutations"`` (the explicit k!-term sum), ``"orbits"``
    (grouping prefixes by their sorted representative) or ``"auto"``, which
    uses the permutation sum while k! stays below ``PERMUTATION_SUM_LIMIT``.
    """
    if not 1 <= k <= L.m:
        raise ValueError(f"k={k} outside 1..{L.m}")
    if method == "auto":
        method = "permutations" if factorial(k) <= PERMUTATION_SUM_LIMIT else "orbits"
    if method == "permutations":
        if k > MAX_PERMUTATION_K:
            raise BudgetExceeded(f"{k}! permutations exceeds the k <= {MAX_PERMUTATION_K} guard")
        arr = _symmetrize_by_permutations(L.coeffs, k)
    elif method == "orbits":
        arr = _symmetrize_by_orbits(L.coeffs, L.n, k)
    else:
        raise ValueError(f"unknown method {method!r}")
    return MultilinearForm(L.n, L.m, arr)


def full_symmetrize(L: MultilinearForm, method: str = "auto") -> MultilinearForm:
    return partial_symmetrize(L, L.m, method)


def polarize_eval(P: HomogeneousPolynomial, args) -> complex:
    """Evaluate the symmetric form of P through the signed 2**m-term polarization sum."""
    if P.m > MAX_POLARIZATION_DEGREE:
        raise BudgetExceeded(f"2**{P.m} sign patterns exceeds the m <= {MAX_POLARIZATION_DEGREE} guard")
    vecs = _check_vectors(P.n, P.m, args)
    total = 0j
    for signs in itertools.product((1, -1), repeat=P.m):
        point = sum(s * x for s, x in zip(signs, vecs))
        total += np.prod(signs) * evaluate_poly(P, point)
    return total / (2**P.m * factorial(P.m))


def coeff_of_Sk_closed_form(P: HomogeneousPolynomial, i, k: int) -> complex:
    """Entry ``i`` of the k-th partial symmetrization of L_P, without permutation sums.

    Non-zero only when the tail ``(i_{k+1}, ..., i_m)`` is non-decreasing and
    ``max(i_1, ..., i_k) <= i_{k+1}``; then it equals ``c_{i*}(P)`` divided by
    the orbit size of the prefix ``(i_1, ..., i_k)``.
    """
    if not 1 <= k <= P.m:
        raise ValueError(f"k={k} outside 1..{P.m}")
    i = MultiIndex(i, P.n)
    if len(i) != P.m:
        raise ValueError(f"index {tuple(i)} does not have length {P.m}")
    head, tail = i[:k], i[k:]
    if not is_nondecreasing(tail):
        return 0j
    if tail and max(head) > tail[0]:
        return 0j
    return P.coefficient(canonicalize(i)) / orbit_size(head)


def partial_symmetrize_closed_form(P: HomogeneousPolynomial, k: int, budget: int | None = None) -> MultilinearForm:
    check_budget(P.n**P.m, budget)
    arr = np.zeros((P.n,) * P.m, dtype=complex)
    for row in index_grid(P.n, P.m):
        arr[tuple(row - 1)] = coeff_of_Sk_closed_form(P, tuple(row), k)
    return MultilinearForm(P.n, P.m, arr)


def random_polynomial(n: int, m: int, rng: np.random.Generator) -> HomogeneousPolynomial:
    """Complex standard Gaussian coefficients on every non-decreasing index."""
    keys = [tuple(j) for j in enumerate_nondecreasing(n, m)]
    values = complex_gaussian(rng, len(keys))
    return HomogeneousPolynomial(n, m, dict(zip(keys, values)))


def random_form(n: int, m: int, rng: np.random.Generator) -> MultilinearForm:
    check_budget(n**m)
    return MultilinearForm(n, m, complex_gaussian(rng, (n,) * m))
