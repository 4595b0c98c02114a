"""JSON wire format for polynomials, forms and multipliers.

All three share one layout::

    {"n": 2, "m": 2, "terms": [{"index": [1, 2], "re": 1.0, "im": 0.0}, ...]}

Indices are 1-based. Polynomial indices must be non-decreasing; duplicate
indices are rejected everywhere. Forms and multipliers list their non-zero
entries in lexicographic order.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .forms import HomogeneousPolynomial, MultilinearForm
from .multiindex import MultiIndex, index_grid, is_nondecreasing
from .schur import SchurMultiplier

__all__ = [
    "poly_to_json",
    "poly_from_json",
    "form_to_json",
    "form_from_json",
    "multiplier_to_json",
    "multiplier_from_json",
    "load_polynomials",
    "dumps",
]


def _term(index, value) -> dict:
    value = complex(value)
    return {"index": [int(t) for t in index], "re": float(value.real), "im": float(value.imag)}


def _read_terms(data: dict, nondecreasing: bool) -> tuple:
    try:
        n, m, terms = int(data["n"]), int(data["m"]), data["terms"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"expected keys n, m, terms: {exc}") from None
    entries = {}
    for term in terms:
        index = tuple(MultiIndex(term["index"], n))
        if len(index) != m:
            raise ValueError(f"index {list(index)} does not have length {m}")
        if nondecreasing and not is_nondecreasing(index):
            raise ValueError(f"polynomial index {list(index)} is not non-decreasing")
        if index in entries:
            raise ValueError(f"duplicate index {list(index)}")
        entries[index] = complex(float(term.get("re", 0.0)), float(term.get("im", 0.0)))
    return n, m, entries


def poly_to_json(P: HomogeneousPolynomial) -> dict:
    return {"n": P.n, "m": P.m, "terms": [_term(j, P.coeffs[j]) for j in sorted(P.coeffs)]}


def poly_from_json(data: dict) -> HomogeneousPolynomial:
    n, m, entries = _read_terms(data, nondecreasing=True)
    return HomogeneousPolynomial(n, m, entries)


def _tensor_terms(n: int, m: int, arr: np.ndarray) -> list:
    flat = arr.reshape(-1)
    grid = index_grid(n, m)
    return [_term(grid[r], flat[r]) for r in np.flatnonzero(flat)]


def form_to_json(L: MultilinearForm) -> dict:
    return {"n": L.n, "m": L.m, "terms": _tensor_terms(L.n, L.m, L.coeffs)}


def form_from_json(data: dict) -> MultilinearForm:
    n, m, entries = _read_terms(data, nondecreasing=False)
    return MultilinearForm.from_entries(n, m, entries)


def multiplier_to_json(A: SchurMultiplier) -> dict:
    return {"n": A.n, "m": A.m, "terms": _tensor_terms(A.n, A.m, A.entries)}


def multiplier_from_json(data: dict) -> SchurMultiplier:
    n, m, entries = _read_terms(data, nondecreasing=False)
    return SchurMultiplier(n, m, MultilinearForm.from_entries(n, m, entries).coeffs)


def load_polynomials(path) -> list:
    """Read one polynomial object, or a JSON list of them, from ``path``."""
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict):
        data = [data]
    return [poly_from_json(d) for d in data]


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"
