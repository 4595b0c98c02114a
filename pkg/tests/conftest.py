import itertools
from math import factorial

import numpy as np
import pytest

from polyforms.forms import HomogeneousPolynomial, MultilinearForm

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# ---------------------------------------------------------------------------
# brute-force oracles, deliberately written with plain loops over tuples


def brute_orbit(i):
    return set(itertools.permutations(i))


def brute_partial_symmetrize(L: MultilinearForm, k: int) -> np.ndarray:
    """Entry-by-entry average over the k! permutations of the first k slots."""
    out = np.zeros_like(L.coeffs)
    for i in itertools.product(range(1, L.n + 1), repeat=L.m):
        total = 0j
        for sigma in itertools.permutations(range(k)):
            j = tuple(i[s] for s in sigma) + i[k:]
            total += L.coefficient(j)
        out[tuple(t - 1 for t in i)] = total / factorial(k)
    return out


def brute_evaluate(L: MultilinearForm, args) -> complex:
    total = 0j
    for i in itertools.product(range(L.n), repeat=L.m):
        term = L.coeffs[i]
        for t, x in zip(i, args):
            term *= x[t]
        total += term
    return total


def phase_grid_sup_norm(L: MultilinearForm, resolution: int) -> float:
    """max |L| over torus points whose phases lie on a uniform grid (first phase per slot pinned)."""
    n, m = L.n, L.m
    angles = 2 * np.pi * np.arange(resolution) / resolution
    free = (n - 1) * m
    mesh = np.meshgrid(*([angles] * free), indexing="ij")
    thetas = np.stack([g.reshape(-1) for g in mesh], axis=1)
    best = 0.0
    for chunk in np.array_split(thetas, max(1, len(thetas) // 200000)):
        vals = np.zeros(len(chunk), dtype=complex)
        for i in itertools.product(range(n), repeat=m):
            term = np.full(len(chunk), L.coeffs[i], dtype=complex)
            for slot, t in enumerate(i):
                if t > 0:
                    term = term * np.exp(1j * chunk[:, slot * (n - 1) + t - 1])
            vals += term
        best = max(best, float(np.abs(vals).max()))
    return best


def antisymmetric_form():
    return MultilinearForm.from_entries(2, 2, {(1, 2): 1, (2, 1): -1})


def poly(n, m, terms):
    return HomogeneousPolynomial(n, m, terms)
