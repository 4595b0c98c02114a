"""Entrywise (Schur) products over {1..n}^m and the multipliers that relate
consecutive partial symmetrizations of L_P.

Every named constructor returns a dense :class:`SchurMultiplier`. Entries are
evaluated from their defining predicate on the full index grid, so they are
exact 0/1 values (or exact small rationals for the weighted multiplier).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .forms import HomogeneousPolynomial, MultilinearForm, lform_from_poly, partial_symmetrize
from .multiindex import check_budget, index_grid, is_nondecreasing

__all__ = [
    "SchurMultiplier",
    "schur_product",
    "ones",
    "matrix_D",
    "matrix_T",
    "matrix_Ak_direct",
    "matrix_Aku",
    "matrix_Ak_factored",
    "apply_Ak_step",
    "coeff_compare_case",
    "MAX_SUBSET_K",
]

#: Largest k for which A^{k,u} may be expanded as a sum over u-subsets of {1..k}.
MAX_SUBSET_K = 12


@dataclass(frozen=True, eq=False)
class SchurMultiplier:
    """A tensor over {1..n}^m acting entrywise on m-forms."""

    n: int
    m: int
    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=complex)
        if arr.shape != (self.n,) * self.m:
            raise ValueError(f"entries have shape {arr.shape}, expected {(self.n,) * self.m}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    def entry(self, i) -> complex:
        return complex(self.entries[tuple(t - 1 for t in i)])

    def _same_shape(self, other: "SchurMultiplier") -> None:
        if (self.n, self.m) != (other.n, other.m):
            raise ValueError(f"shape mismatch: (n, m) = {(self.n, self.m)} vs {(other.n, other.m)}")

    def __mul__(self, other):
        if isinstance(other, (SchurMultiplier, MultilinearForm)):
            return schur_product(self, other)
        return SchurMultiplier(self.n, self.m, self.entries * other)

    def __rmul__(self, scalar):
        return SchurMultiplier(self.n, self.m, scalar * self.entries)

    def __add__(self, other: "SchurMultiplier") -> "SchurMultiplier":
        self._same_shape(other)
        return SchurMultiplier(self.n, self.m, self.entries + other.entries)

    def __sub__(self, other: "SchurMultiplier") -> "SchurMultiplier":
        self._same_shape(other)
        return SchurMultiplier(self.n, self.m, self.entries - other.entries)

    def allclose(self, other: "SchurMultiplier", atol: float = 0.0) -> bool:
        self._same_shape(other)
        return bool(np.max(np.abs(self.entries - other.entries), initial=0.0) <= atol)

    def is_zero_one(self) -> bool:
        return bool(np.all((self.entries == 0) | (self.entries == 1)))


def schur_product(A: SchurMultiplier, B):
    """Entrywise product; returns the type of ``B`` (multiplier or form)."""
    if (A.n, A.m) != (B.n, B.m):
        raise ValueError(f"shape mismatch: (n, m) = {(A.n, A.m)} vs {(B.n, B.m)}")
    if isinstance(B, MultilinearForm):
        return MultilinearForm(B.n, B.m, A.entries * B.coeffs)
    return SchurMultiplier(B.n, B.m, A.entries * B.entries)


def _grid(n: int, m: int, budget: int | None) -> np.ndarray:
    return index_grid(n, m, budget)


def _from_flat(n: int, m: int, values: np.ndarray) -> SchurMultiplier:
    return SchurMultiplier(n, m, values.reshape((n,) * m))


def _check_slot(s: int, m: int, name: str) -> None:
    if not 1 <= s <= m:
        raise ValueError(f"{name}={s} outside 1..{m}")


def ones(n: int, m: int, budget: int | None = None) -> SchurMultiplier:
    check_budget(n**m, budget)
    return SchurMultiplier(n, m, np.ones((n,) * m, dtype=complex))


def matrix_D(u: int, v: int, n: int, m: int, budget: int | None = None) -> SchurMultiplier:
    """1 where ``i_u == i_v``, else 0."""
    _check_slot(u, m, "u")
    _check_slot(v, m, "v")
    g = _grid(n, m, budget)
    return _from_flat(n, m, (g[:, u - 1] == g[:, v - 1]).astype(complex))


def matrix_T(u: int, v: int, n: int, m: int, budget: int | None = None) -> SchurMultiplier:
    """1 where ``i_u <= i_v``, else 0."""
    _check_slot(u, m, "u")
    _check_slot(v, m, "v")
    g = _grid(n, m, budget)
    return _from_flat(n, m, (g[:, u - 1] <= g[:, v - 1]).astype(complex))


def _tail_multiplicity(g: np.ndarray, k: int) -> np.ndarray:
    return np.sum(g[:, :k] == g[:, [k - 1]], axis=1)


def matrix_Ak_direct(k: int, n: int, m: int, budget: int | None = None) -> SchurMultiplier:
    """``k / #{u <= k : i_u = i_k}`` where ``max(i_1..i_{k-1}) <= i_k``, else 0."""
    _check_slot(k, m, "k")
    g = _grid(n, m, budget)
    guard = np.all(g[:, :k] <= g[:, [k - 1]], axis=1)
    values = np.where(guard, k / _tail_multiplicity(g, k), 0.0)
    return _from_flat(n, m, values.astype(complex))


def _Aku_by_subsets(k: int, u: int, n: int, m: int, budget: int | None) -> SchurMultiplier:
    if k > MAX_SUBSET_K:
        raise ValueError(f"subset expansion limited to k <= {MAX_SUBSET_K}, got k={k}")
    one = ones(n, m, budget)
    D = [matrix_D(q, k, n, m, budget) for q in range(1, k + 1)]
    total = SchurMultiplier(n, m, np.zeros((n,) * m))
    for Q in itertools.combinations(range(k), u):
        term = one
        for q in range(k):
            term = term * (D[q] if q in Q else one - D[q])
        total = total + term
    return total


def matrix_Aku(k: int, u: int, n: int, m: int, via: str = "count", budget: int | None = None) -> SchurMultiplier:
    """Indicator of ``#{u' <= k : i_{u'} = i_k} == u``.

    ``via="count"`` counts multiplicities per index; ``via="subsets"`` builds the
    sum over u-subsets Q of {1..k} of products of D^{q,k} and (1 - D^{q,k}).
    """
    _check_slot(k, m, "k")
    if not 1 <= u <= k:
        raise ValueError(f"u={u} outside 1..{k}")
    if via == "subsets":
        return _Aku_by_subsets(k, u, n, m, budget)
    if via != "count":
        raise ValueError(f"unknown construction {via!r}")
    g = _grid(n, m, budget)
    return _from_flat(n, m, (_tail_multiplicity(g, k) == u).astype(complex))


def matrix_Ak_factored(k: int, n: int, m: int, via: str = "count", budget: int | None = None) -> SchurMultiplier:
    """Product of ``T^{u,k}`` over u < k, times ``sum_u (k/u) A^{k,u}``.

    The empty product (k = 1) is the all-ones multiplier.
    """
    _check_slot(k, m, "k")
    result = ones(n, m, budget)
    for u in range(1, k):
        result = result * matrix_T(u, k, n, m, budget)
    weighted = SchurMultiplier(n, m, np.zeros((n,) * m))
    for u in range(1, k + 1):
        weighted = weighted + (k / u) * matrix_Aku(k, u, n, m, via, budget)
    return result * weighted


def apply_Ak_step(P: HomogeneousPolynomial, k: int, budget: int | None = None) -> MultilinearForm:
    """``A^k`` applied entrywise to the k-th partial symmetrization of L_P.

    The result coincides with the (k-1)-th partial symmetrization.
    """
    if not 2 <= k <= P.m:
        raise ValueError(f"k={k} outside 2..{P.m}")
    Sk = partial_symmetrize(lform_from_poly(P, budget), k)
    return schur_product(matrix_Ak_direct(k, P.n, P.m, budget), Sk)


def coeff_compare_case(i, k: int) -> int:
    """Classify ``i = (head, l, tail)`` with ``len(head) = k - 1`` into case 1, 2 or 3.

    1. tail non-decreasing, ``l <= tail[0]`` and ``max(head) <= l``
    2. tail non-decreasing, ``l <= tail[0]`` and ``l < max(head) <= tail[0]``
    3. everything else
    """
    if not 2 <= k <= len(i):
        raise ValueError(f"k={k} outside 2..{len(i)}")
    head, l, tail = tuple(i[: k - 1]), i[k - 1], tuple(i[k:])
    if not is_nondecreasing(tail):
        return 3
    bound = tail[0] if tail else None
    if bound is not None and l > bound:
        return 3
    top = max(head)
    if top <= l:
        return 1
    if bound is None or top <= bound:
        return 2
    return 3
