"""1-unconditional norms on C^n and estimates of sup-norms of forms and polynomials.

Two estimators are provided:

* :func:`form_norm_lower` -- alternating maximization. Freezing all slots but
  one leaves a linear functional whose maximum over the unit ball is its dual
  norm, attained by an explicit norming vector. Cycling through the slots never
  decreases the objective. The result is a lower bound with a witness.
* :func:`form_norm_bracket` / :func:`poly_norm_bracket` -- for the sup-norm only.
  The supremum of a multilinear modulus over the polydisc is attained on the
  torus, so a phase grid plus a Lipschitz bound gives a certified interval.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import pi, sin

import numpy as np

from .forms import (
    HomogeneousPolynomial,
    MultilinearForm,
    complex_gaussian,
    evaluate_form,
    evaluate_poly,
    full_symmetrize,
    lform_from_poly,
)
from .multiindex import check_budget
from .schur import SchurMultiplier, matrix_D, matrix_T, schur_product

__all__ = [
    "NormSpec",
    "NormEstimate",
    "norm_eval",
    "dual_norm",
    "dual_norming_vector",
    "form_norm_lower",
    "form_norm_bracket",
    "poly_norm_lower",
    "poly_norm_bracket",
    "schur_mu_trials",
    "schur_mu_lower",
    "triangle_projection_matrix",
    "identity_matrix",
    "rescale_form",
    "DEFAULT_RESTARTS",
    "DEFAULT_MAX_ITERS",
    "DEFAULT_TOL",
]

DEFAULT_RESTARTS = 32
DEFAULT_MAX_ITERS = 200
DEFAULT_TOL = 1e-12
# Allowed per-sweep decrease from floating point noise before monotonicity is declared broken.
_MONOTONE_SLACK = 1e-12


@dataclass(frozen=True)
class NormSpec:
    """``||x|| = ||w * x||_p`` on C^n; ``weights=None`` means the plain l_p norm."""

    p: float
    n: int
    weights: tuple | None = None

    def __post_init__(self):
        p = float(self.p)
        if not p >= 1:
            raise ValueError(f"p must lie in [1, inf], got {self.p}")
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        object.__setattr__(self, "p", p)
        if self.weights is not None:
            w = tuple(float(v) for v in self.weights)
            if len(w) != self.n:
                raise ValueError(f"{len(w)} weights for dimension {self.n}")
            if min(w) <= 0:
                raise ValueError("weights must be positive")
            object.__setattr__(self, "weights", w)

    @classmethod
    def lp(cls, p: float, n: int) -> "NormSpec":
        return cls(p, n)

    @classmethod
    def weighted(cls, p: float, weights) -> "NormSpec":
        weights = tuple(weights)
        return cls(p, len(weights), weights)

    @property
    def family(self) -> str:
        return "lp" if self.weights is None else "weighted_lp"

    @property
    def is_sup_norm(self) -> bool:
        return self.weights is None and np.isinf(self.p)

    @property
    def label(self) -> str:
        p = "inf" if np.isinf(self.p) else f"{self.p:g}"
        return f"l_{p}" if self.weights is None else f"weighted_l_{p}"

    @property
    def dual_exponent(self) -> float:
        if self.p == 1:
            return np.inf
        if np.isinf(self.p):
            return 1.0
        return self.p / (self.p - 1)

    def __call__(self, x) -> float:
        return norm_eval(self, x)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "p": None if np.isinf(self.p) else self.p,
            "n": self.n,
            "weights": None if self.weights is None else list(self.weights),
        }


def _weights(spec: NormSpec) -> np.ndarray | None:
    return None if spec.weights is None else np.asarray(spec.weights)


def _lp_rows(A: np.ndarray, p: float) -> np.ndarray:
    """l_p norms of the rows of a non-negative array."""
    if np.isinf(p):
        return A.max(axis=-1)
    if p == 1:
        return A.sum(axis=-1)
    scale = A.max(axis=-1, keepdims=True)
    safe = np.where(scale > 0, scale, 1.0)
    return safe[..., 0] * np.sum((A / safe) ** p, axis=-1) ** (1.0 / p)


def _norm_rows(spec: NormSpec, X: np.ndarray) -> np.ndarray:
    A = np.abs(X)
    w = _weights(spec)
    if w is not None:
        A = A * w
    return _lp_rows(A, spec.p)


def norm_eval(spec: NormSpec, x) -> float:
    x = np.asarray(x, dtype=complex)
    if x.shape != (spec.n,):
        raise ValueError(f"vector has shape {x.shape}, expected ({spec.n},)")
    return float(_norm_rows(spec, x[None, :])[0])


def _phase(C: np.ndarray) -> np.ndarray:
    """conj(c)/|c|, with 1 where c vanishes."""
    A = np.abs(C)
    return np.where(A > 0, np.conj(C) / np.where(A > 0, A, 1.0), 1.0)


def _dual_rows(spec: NormSpec, C: np.ndarray):
    """Norming vectors and dual norms for each row of ``C``.

    Row ``r`` of the returned ``X`` has norm 1 and maximizes
    ``Re sum_k C[r, k] X[r, k]``; the maximum is ``values[r]``.
    """
    w = _weights(spec)
    if w is not None:
        C = C / w
    A = np.abs(C)
    ph = _phase(C)
    p = spec.p
    if np.isinf(p):
        X = ph
        values = A.sum(axis=1)
    elif p == 1:
        # argmax returns the first maximum, i.e. the lowest index on ties
        top = np.argmax(A, axis=1)
        rows = np.arange(C.shape[0])
        X = np.zeros_like(C)
        X[rows, top] = ph[rows, top]
        values = A[rows, top]
    else:
        q = p / (p - 1)
        values = _lp_rows(A, q)
        safe = np.where(values > 0, values, 1.0)[:, None]
        X = ph * (A / safe) ** (q - 1)
        dead = values == 0
        if np.any(dead):
            X[dead] = 1.0 / C.shape[1] ** (1.0 / p)
    if w is not None:
        X = X / w
    return X, values


def dual_norm(spec: NormSpec, c) -> float:
    """``sup_{||x|| <= 1} |sum_k c_k x_k|``."""
    c = np.asarray(c, dtype=complex)
    if c.shape != (spec.n,):
        raise ValueError(f"coefficient vector has shape {c.shape}, expected ({spec.n},)")
    return float(_dual_rows(spec, c[None, :])[1][0])


def dual_norming_vector(spec: NormSpec, c) -> np.ndarray:
    """Unit vector ``x`` maximizing ``Re sum_k c_k x_k``.

    For the l_1 family ties between largest ``|c_k|`` go to the lowest index.
    """
    c = np.asarray(c, dtype=complex)
    if c.shape != (spec.n,):
        raise ValueError(f"coefficient vector has shape {c.shape}, expected ({spec.n},)")
    if not np.any(c):
        raise ValueError("the zero functional has no norming vector")
    return _dual_rows(spec, c[None, :])[0][0]


@dataclass
class NormEstimate:
    """A sup-norm value with an optional certified upper bound and a witness."""

    lower: float
    upper: float | None
    witness: list
    method: str
    seed: int | None = None
    restarts: int = 0
    iters: int = 0
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.upper is not None and self.lower > self.upper:
            raise ValueError(f"lower {self.lower} exceeds upper {self.upper}")

    @property
    def width(self) -> float | None:
        return None if self.upper is None else self.upper - self.lower

    def to_json(self) -> dict:
        out = {
            "lower": float(self.lower),
            "upper": None if self.upper is None else float(self.upper),
            "method": self.method,
            "witness": [
                [{"re": float(z.real), "im": float(z.imag)} for z in np.asarray(x, dtype=complex)]
                for x in self.witness
            ],
            "seed": self.seed,
            "restarts": int(self.restarts),
            "iters": int(self.iters),
        }
        if self.meta:
            out["meta"] = dict(sorted(self.meta.items()))
        return out


# ---------------------------------------------------------------------------
# alternating maximization


def _slot_functionals(T: np.ndarray, X: list, t: int) -> np.ndarray:
    """Row r: the coefficients of ``L(X[0][r], ..., . , ..., X[m-1][r])`` in slot t."""
    m = T.ndim
    if m == 1:
        return np.broadcast_to(T, (X[0].shape[0], T.shape[0])).copy()
    if m == 2:
        return X[1] @ T.T if t == 0 else X[0] @ T
    batch = m
    operands = [T, list(range(m))]
    for s in range(m):
        if s != t:
            operands += [X[s], [batch, s]]
    return np.einsum(*operands, [batch, t])


def _random_unit_rows(spec: NormSpec, rng: np.random.Generator, count: int) -> np.ndarray:
    Z = complex_gaussian(rng, (count, spec.n))
    return Z / _norm_rows(spec, Z)[:, None]


def _normalize_rows(spec: NormSpec, X: np.ndarray) -> np.ndarray:
    norms = _norm_rows(spec, X)
    return X / np.where(norms > 1, norms, 1.0)[:, None]


def form_norm_lower(
    L: MultilinearForm,
    spec: NormSpec,
    restarts: int = DEFAULT_RESTARTS,
    max_iters: int = DEFAULT_MAX_ITERS,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    starts=(),
) -> NormEstimate:
    """Lower estimate of ``sup |L(x1, ..., xm)|`` over the unit ball in every slot.

    Runs ``restarts`` random starts (plus the all-ones start and any witness
    tuples passed in ``starts``) in lock step. A sweep replaces each slot in
    turn by the norming vector of the functional left by freezing the others.
    Iteration stops once no start improves by more than ``tol`` (relative to
    the current value) or after ``max_iters`` sweeps.
    """
    if spec.n != L.n:
        raise ValueError(f"norm on C^{spec.n} for a form on C^{L.n}")
    m = L.m
    if not np.any(L.coeffs):
        zero = [np.zeros(L.n, dtype=complex) for _ in range(m)]
        return NormEstimate(0.0, None, zero, "alternating", seed, restarts, 0)

    rng = np.random.default_rng(seed)
    ones = np.ones((1, L.n), dtype=complex)
    ones = ones / _norm_rows(spec, ones)[:, None]
    X = []
    for t in range(m):
        blocks = [ones, _random_unit_rows(spec, rng, restarts)]
        for start in starts:
            blocks.append(_normalize_rows(spec, np.asarray(start[t], dtype=complex)[None, :]))
        X.append(np.concatenate(blocks))

    T = L.coeffs
    value = np.abs(np.sum(_slot_functionals(T, X, 0) * X[0], axis=1))
    sweeps = 0
    for sweeps in range(1, max_iters + 1):
        before = value
        for t in range(m):
            X[t], value = _dual_rows(spec, _slot_functionals(T, X, t))
        drop = before - value
        if np.any(drop > _MONOTONE_SLACK * np.maximum(before, 1.0)):
            raise RuntimeError(f"alternating sweep decreased the objective by {drop.max():.3e}")
        gain = np.max((value - before) / np.maximum(value, 1.0))
        if gain <= tol:
            break

    best = int(np.argmax(value))
    witness = [X[t][best].copy() for t in range(m)]
    lower = abs(evaluate_form(L, witness))
    return NormEstimate(lower, None, witness, "alternating", seed, restarts, sweeps)


def poly_norm_lower(
    P: HomogeneousPolynomial,
    spec: NormSpec,
    restarts: int = DEFAULT_RESTARTS,
    max_iters: int = DEFAULT_MAX_ITERS,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
) -> NormEstimate:
    """Lower estimate of ``sup_{||x|| <= 1} |P(x)|``.

    Ascent on a single vector: move towards the norming vector of the
    linearization ``S(., x, ..., x)`` of the symmetric form, backtracking along
    the segment (which stays in the ball) until ``|P|`` increases.
    """
    if spec.n != P.n:
        raise ValueError(f"norm on C^{spec.n} for a polynomial on C^{P.n}")
    if not any(P.coeffs.values()):
        return NormEstimate(0.0, None, [np.zeros(P.n, dtype=complex)], "alternating", seed, restarts, 0)

    S = full_symmetrize(lform_from_poly(P)).coeffs
    m = P.m
    rng = np.random.default_rng(seed)
    ones = np.ones((1, P.n), dtype=complex)
    starts = np.concatenate([ones / _norm_rows(spec, ones)[:, None], _random_unit_rows(spec, rng, restarts)])

    def linearization(x):
        out = S
        for _ in range(m - 1):
            out = out @ x
        return out

    best_val, best_x, total = -1.0, None, 0
    for x in starts:
        val = abs(evaluate_poly(P, x))
        for _ in range(max_iters):
            total += 1
            c = linearization(x)
            if not np.any(c):
                break
            y = _dual_rows(spec, c[None, :])[0][0]
            current = evaluate_poly(P, x)
            if current != 0:
                # align the linearized gain with the phase of P(x)
                y = y * (current / abs(current))
            step, improved = 1.0, False
            while step > 1e-6:
                cand = x + step * (y - x)
                cand_val = abs(evaluate_poly(P, cand))
                if cand_val > val:
                    improved = True
                    break
                step /= 2
            if not improved:
                break
            gain = (cand_val - val) / max(cand_val, 1.0)
            x, val = cand, cand_val
            if gain <= tol:
                break
        if val > best_val:
            best_val, best_x = val, x.copy()
    lower = abs(evaluate_poly(P, best_x))
    return NormEstimate(lower, None, [best_x], "alternating", seed, restarts, total)


# ---------------------------------------------------------------------------
# certified brackets for the sup-norm


def _require_sup_norm(spec: NormSpec | None) -> None:
    if spec is not None and not spec.is_sup_norm:
        raise ValueError(f"phase-grid brackets need the plain sup-norm, got {spec.label}")


def _chord(G: int) -> float:
    return 2.0 * sin(pi / G)


def _phase_vectors(thetas: np.ndarray) -> np.ndarray:
    """Rows ``(1, e^{i theta_1}, ..., e^{i theta_{n-1}})``."""
    lead = np.ones((thetas.shape[0], 1), dtype=complex)
    return np.concatenate([lead, np.exp(1j * thetas)], axis=1)


def _product_thetas(axes: list) -> np.ndarray:
    if not axes:
        return np.zeros((1, 0))
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.reshape(-1) for g in mesh], axis=1)


def _last_slot_values(T: np.ndarray, slots: list) -> np.ndarray:
    """``sum_k |c_k|`` for the last-slot functional at every combination of slot vectors.

    ``slots[s]`` holds candidate vectors for slot s (s < m - 1); combinations
    are taken as a C-ordered Cartesian product.
    """
    n = T.shape[0]
    tmp = T.reshape(1, -1)
    for V in slots:
        tmp = tmp.reshape(tmp.shape[0], n, -1)
        tmp = np.einsum("gar,ha->ghr", tmp, V).reshape(-1, tmp.shape[2])
    return np.abs(tmp).sum(axis=1)


def _split_thetas(theta: np.ndarray, slots: int, n: int) -> list:
    return [theta[s * (n - 1):(s + 1) * (n - 1)] for s in range(slots)]


def form_norm_bracket(
    L: MultilinearForm,
    spec: NormSpec | None = None,
    angular_resolution: int = 64,
    refine: int = 1,
    local_points: int = 9,
    budget: int | None = None,
) -> NormEstimate:
    """Certified interval for ``sup |L|`` over the sup-norm polydisc.

    The first coordinate of every slot is pinned to phase 1 (|L| is invariant
    under a unit scalar per slot), the remaining phases of slots 1..m-1 run over
    a grid of ``angular_resolution`` angles, and the last slot is maximized
    exactly (its optimum is the l_1 norm of the remaining functional). Moving a
    grid point to the true optimum changes each coordinate by at most the
    chord ``2 sin(pi/G)``, so ``upper = grid max + m * chord * sum_i |c_i|``.
    ``refine`` local passes around the best grid point can only raise ``lower``.
    """
    _require_sup_norm(spec)
    n, m = L.n, L.m
    G = int(angular_resolution)
    if G < 2:
        raise ValueError("angular resolution must be at least 2")
    T = L.coeffs
    B = float(np.abs(T).sum())
    meta = {"grid": G, "refine": refine}
    if B == 0:
        zero = [np.zeros(n, dtype=complex) for _ in range(m)]
        return NormEstimate(0.0, 0.0, zero, "phase_grid_bracket", None, 0, 0, meta)

    free = (n - 1) * (m - 1)
    check_budget(G**free * n, budget, "grid evaluations")
    axis = 2 * pi * np.arange(G) / G
    grid_slot = _phase_vectors(_product_thetas([axis] * (n - 1)))
    values = _last_slot_values(T, [grid_slot] * (m - 1))
    flat = int(np.argmax(values))
    grid_max = float(values[flat])

    # recover the phases of the best grid point
    digits = np.unravel_index(flat, (G,) * free) if free else ()
    theta = axis[np.asarray(digits, dtype=int)] if free else np.zeros(0)
    best = grid_max

    half = 2 * pi / G
    for _ in range(refine if free else 0):
        offsets = np.linspace(-half, half, local_points)
        check_budget(local_points**free * n, budget, "grid evaluations")
        local = _product_thetas([theta[c] + offsets for c in range(free)])
        slot_vectors = []
        # product structure: each slot's candidates are the local sub-grid of its own coordinates
        for s in range(m - 1):
            axes = [theta[s * (n - 1) + c] + offsets for c in range(n - 1)]
            slot_vectors.append(_phase_vectors(_product_thetas(axes)))
        vals = _last_slot_values(T, slot_vectors)
        j = int(np.argmax(vals))
        if vals[j] > best:
            best = float(vals[j])
            theta = local[j]
        half = 2 * half / (local_points - 1)

    witness = [_phase_vectors(t[None, :])[0] for t in _split_thetas(theta, m - 1, n)]
    last = _slot_functionals(T, [w[None, :] for w in witness] + [np.ones((1, n))], m - 1)[0]
    witness.append(_phase(last[None, :])[0])
    lower = abs(evaluate_form(L, witness))
    upper = grid_max + m * _chord(G) * B
    return NormEstimate(lower, max(upper, lower), witness, "phase_grid_bracket", None, 0, refine, meta)


def _poly_values(P: HomogeneousPolynomial, X: np.ndarray) -> np.ndarray:
    total = np.zeros(X.shape[0], dtype=complex)
    for j in sorted(P.coeffs):
        term = np.full(X.shape[0], P.coeffs[j], dtype=complex)
        for t in j:
            term = term * X[:, t - 1]
        total += term
    return total


def poly_norm_bracket(
    P: HomogeneousPolynomial,
    spec: NormSpec | None = None,
    angular_resolution: int = 64,
    refine: int = 1,
    local_points: int = 9,
    budget: int | None = None,
) -> NormEstimate:
    """Certified interval for ``sup |P|`` over the sup-norm polydisc.

    Same construction as :func:`form_norm_bracket` on the diagonal: the first
    phase is pinned (``P(e^{it} x) = e^{imt} P(x)``), the others run over the
    grid, and ``upper = grid max + m * chord * sum_j |c_j|``.
    """
    _require_sup_norm(spec)
    n, m = P.n, P.m
    G = int(angular_resolution)
    if G < 2:
        raise ValueError("angular resolution must be at least 2")
    B = float(sum(abs(c) for c in P.coeffs.values()))
    meta = {"grid": G, "refine": refine}
    if B == 0:
        return NormEstimate(0.0, 0.0, [np.zeros(n, dtype=complex)], "phase_grid_bracket", None, 0, 0, meta)

    free = n - 1
    check_budget(G**free * n, budget, "grid evaluations")
    axis = 2 * pi * np.arange(G) / G
    thetas = _product_thetas([axis] * free)
    values = np.abs(_poly_values(P, _phase_vectors(thetas)))
    flat = int(np.argmax(values))
    grid_max = float(values[flat])
    theta, best = thetas[flat], grid_max

    half = 2 * pi / G
    for _ in range(refine if free else 0):
        offsets = np.linspace(-half, half, local_points)
        check_budget(local_points**free * n, budget, "grid evaluations")
        local = _product_thetas([theta[c] + offsets for c in range(free)])
        vals = np.abs(_poly_values(P, _phase_vectors(local)))
        j = int(np.argmax(vals))
        if vals[j] > best:
            best, theta = float(vals[j]), local[j]
        half = 2 * half / (local_points - 1)

    x = _phase_vectors(theta[None, :])[0]
    lower = abs(evaluate_poly(P, x))
    upper = grid_max + m * _chord(G) * B
    return NormEstimate(lower, max(upper, lower), [x], "phase_grid_bracket", None, 0, refine, meta)


# ---------------------------------------------------------------------------
# Schur multiplier norms


def triangle_projection_matrix(n: int) -> SchurMultiplier:
    """The upper-triangular 0/1 pattern ``t_ij = 1`` for ``i <= j``."""
    return matrix_T(1, 2, n, 2)


def identity_matrix(n: int) -> SchurMultiplier:
    return matrix_D(1, 2, n, 2)


def rescale_form(L: MultilinearForm, xs) -> MultilinearForm:
    """The form ``y -> L(x1 * y1, ..., xm * ym)`` (coordinatewise products)."""
    arr = L.coeffs
    for t, x in enumerate(xs):
        shape = [1] * L.m
        shape[t] = L.n
        arr = arr * np.asarray(x, dtype=complex).reshape(shape)
    return MultilinearForm(L.n, L.m, arr)


_TRIAL_FAMILIES = ("gaussian", "rank_one_phase", "gaussian", "unimodular")


def _trial_form(n: int, m: int, trial: int, rng: np.random.Generator) -> tuple:
    if trial == 0 and m == 2:
        # Toeplitz kernel 1/(i - j + 1/2): near-extremal for triangular truncation
        idx = np.arange(n)
        return "hilbert_toeplitz", MultilinearForm(n, m, 1.0 / (idx[:, None] - idx[None, :] + 0.5))
    family = _TRIAL_FAMILIES[trial % len(_TRIAL_FAMILIES)]
    if family == "gaussian":
        return family, MultilinearForm(n, m, complex_gaussian(rng, (n,) * m))
    if family == "rank_one_phase":
        arr = np.ones((), dtype=complex)
        for _ in range(m):
            arr = np.multiply.outer(arr, np.exp(2j * pi * rng.random(n)))
        noise = complex_gaussian(rng, (n,) * m)
        return family, MultilinearForm(n, m, arr + 0.25 * noise)
    return family, MultilinearForm(n, m, np.exp(2j * pi * rng.random((n,) * m)))


def schur_mu_trials(
    A: SchurMultiplier,
    spec: NormSpec,
    trials: int,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    max_iters: int = DEFAULT_MAX_ITERS,
    tol: float = DEFAULT_TOL,
) -> list:
    """Per-trial records ``{trial, family, numerator, denominator, ratio}``.

    The numerator is a lower estimate of ``||A (.) L||``. The denominator is a
    lower estimate of ``||L||`` whose search is also seeded with the
    numerator's witness, which only tightens it.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    if spec.n != A.n:
        raise ValueError(f"norm on C^{spec.n} for a multiplier on C^{A.n}")
    records = []
    for trial in range(trials):
        ss = np.random.SeedSequence([seed, trial])
        form_seed, num_seed, den_seed = (int(s) for s in ss.generate_state(3))
        family, L = _trial_form(A.n, A.m, trial, np.random.default_rng(form_seed))
        num = form_norm_lower(schur_product(A, L), spec, restarts, max_iters, tol, num_seed)
        den = form_norm_lower(L, spec, restarts, max_iters, tol, den_seed, starts=[num.witness])
        ratio = num.lower / den.lower if den.lower > 0 else 0.0
        records.append(
            {"trial": trial, "family": family, "numerator": num.lower, "denominator": den.lower, "ratio": ratio}
        )
    return records


def schur_mu_lower(
    A: SchurMultiplier,
    spec: NormSpec,
    trials: int = 200,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    max_iters: int = DEFAULT_MAX_ITERS,
    tol: float = DEFAULT_TOL,
) -> float:
    """Largest observed ``||A (.) L|| / ||L||`` over sampled forms ``L``."""
    records = schur_mu_trials(A, spec, trials, seed, restarts, max_iters, tol)
    return max(r["ratio"] for r in records)
