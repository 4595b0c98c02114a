"""Multi-indices over {1, ..., n}^m and their permutation orbits.

Indices are 1-based tuples throughout the public API. Dense tensors elsewhere
in the package address entry ``i`` at ``array[tuple(t - 1 for t in i)]``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from math import comb, factorial
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "MultiIndex",
    "check_budget",
    "enumerate_indices",
    "enumerate_nondecreasing",
    "index_grid",
    "canonicalize",
    "is_nondecreasing",
    "occupancy",
    "orbit_size",
    "orbit_info",
    "OrbitInfo",
    "multiplicity_at_tail",
    "concatenate",
    "count_nondecreasing",
]

#: Maximum number of tensor entries any enumeration may touch.
DEFAULT_BUDGET = 10**7

_INT64_MAX = 2**63 - 1


class BudgetExceeded(ValueError):
    """Raised when an enumeration would exceed the configured entry cap."""


def check_budget(count: int, budget: int | None = None, what: str = "entries") -> None:
    cap = DEFAULT_BUDGET if budget is None else budget
    if count > cap:
        raise BudgetExceeded(f"{count} {what} exceeds budget of {cap}")


def _check_shape(n: int, m: int) -> None:
    if n < 1 or m < 1:
        raise ValueError(f"need n >= 1 and m >= 1, got n={n}, m={m}")


class MultiIndex(tuple):
    """An element of {1, ..., n}^m.

    Behaves as a plain tuple of ints (so ``MultiIndex((1, 2), 2) == (1, 2)``)
    but also remembers the ambient dimension ``n``.
    """

    def __new__(cls, entries: Iterable[int], n: int | None = None):
        entries = tuple(int(e) for e in entries)
        if len(entries) == 0:
            raise ValueError("a multi-index needs at least one entry")
        if n is None:
            n = max(entries)
        if n < 1:
            raise ValueError(f"dimension must be >= 1, got {n}")
        for e in entries:
            if not 1 <= e <= n:
                raise ValueError(f"entry {e} outside 1..{n}")
        self = super().__new__(cls, entries)
        self.n = int(n)
        return self

    @property
    def m(self) -> int:
        return len(self)

    @property
    def entries(self) -> tuple:
        return tuple(self)

    def __repr__(self) -> str:
        return f"MultiIndex({tuple(self)!r}, n={self.n})"

    def __reduce__(self):
        return (MultiIndex, (tuple(self), self.n))

    def to_json(self) -> list:
        return list(self)

    @classmethod
    def from_json(cls, data, n: int | None = None) -> "MultiIndex":
        return cls(data, n)


def _as_index(i, n: int | None = None) -> MultiIndex:
    if isinstance(i, MultiIndex) and (n is None or n == i.n):
        return i
    return MultiIndex(i, n if n is not None else getattr(i, "n", None))


def enumerate_indices(n: int, m: int, budget: int | None = None) -> Iterator[MultiIndex]:
    """Yield all n**m indices in lexicographic order."""
    _check_shape(n, m)
    check_budget(n**m, budget)
    for t in itertools.product(range(1, n + 1), repeat=m):
        yield MultiIndex(t, n)


def count_nondecreasing(n: int, m: int) -> int:
    return comb(n + m - 1, m)


def enumerate_nondecreasing(n: int, m: int, budget: int | None = None) -> Iterator[MultiIndex]:
    """Yield the C(n+m-1, m) non-decreasing indices in lexicographic order."""
    _check_shape(n, m)
    check_budget(count_nondecreasing(n, m), budget)
    for t in itertools.combinations_with_replacement(range(1, n + 1), m):
        yield MultiIndex(t, n)


def index_grid(n: int, m: int, budget: int | None = None) -> np.ndarray:
    """All indices as an ``(n**m, m)`` integer array, 1-based, lexicographic.

    Row ``r`` is the index stored at flat position ``r`` of a C-ordered
    ``(n,) * m`` tensor.
    """
    _check_shape(n, m)
    check_budget(n**m, budget)
    grid = np.indices((n,) * m).reshape(m, -1).T
    return grid + 1


def is_nondecreasing(i) -> bool:
    return all(a <= b for a, b in zip(i, i[1:]))


def canonicalize(i) -> MultiIndex:
    """The sorted representative of the orbit of ``i``."""
    i = _as_index(i)
    return MultiIndex(sorted(i), i.n)


def occupancy(i, n: int | None = None) -> tuple:
    """Counts ``alpha_l = #{u : i_u = l}`` for l = 1..n."""
    i = _as_index(i, n)
    counts = Counter(i)
    return tuple(counts.get(l, 0) for l in range(1, i.n + 1))


def orbit_size(i) -> int:
    """Number of distinct tuples obtained by permuting the entries of ``i``.

    Computed as ``m! / prod(alpha_l!)``.
    """
    i = _as_index(i)
    size = factorial(len(i))
    for a in Counter(i).values():
        size //= factorial(a)
    if size > _INT64_MAX:
        raise OverflowError(f"orbit size of {tuple(i)} does not fit in 64 bits")
    return size


class OrbitInfo(tuple):
    """``(canonical, orbit_size, occupancy)`` for a multi-index."""

    __slots__ = ()

    def __new__(cls, canonical, orbit_size, occupancy):
        return super().__new__(cls, (canonical, orbit_size, occupancy))

    canonical = property(lambda self: self[0])
    orbit_size = property(lambda self: self[1])
    occupancy = property(lambda self: self[2])


def orbit_info(i) -> OrbitInfo:
    i = _as_index(i)
    return OrbitInfo(canonicalize(i), orbit_size(i), occupancy(i))


def multiplicity_at_tail(i, k: int) -> int:
    """``#{1 <= u <= k : i_u = i_k}`` (k is 1-based)."""
    if not 1 <= k <= len(i):
        raise IndexError(f"position {k} outside 1..{len(i)}")
    tail = i[k - 1]
    return sum(1 for u in range(k) if i[u] == tail)


def concatenate(i, j) -> MultiIndex:
    """The index ``(i, j)`` of length ``len(i) + len(j)``."""
    if len(i) == 0 or len(j) == 0:
        raise ValueError("both operands of a concatenation need m >= 1")
    dims = {x.n for x in (i, j) if isinstance(x, MultiIndex)}
    if len(dims) > 1:
        raise ValueError(f"dimension mismatch: {i.n} vs {j.n}")
    entries = tuple(i) + tuple(j)
    return MultiIndex(entries, dims.pop() if dims else None)
