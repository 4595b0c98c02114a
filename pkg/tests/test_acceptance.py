"""The nine acceptance criteria, each at its stated tolerance and time budget.

Every test appends one ``Criterion N: PASS|FAIL ...`` line that is printed in
the terminal summary as well as to stdout.
"""

import math
import time

import numpy as np
import pytest

import conftest
from polyforms.forms import (
    complex_gaussian,
    evaluate_form,
    evaluate_poly,
    full_symmetrize,
    lform_from_poly,
    polarize_eval,
    random_polynomial,
)
from polyforms.harness import default_config, report_to_json, run_suite
from polyforms.norms import NormSpec, identity_matrix, schur_mu_lower, triangle_projection_matrix
from polyforms.schur import matrix_Ak_direct, matrix_Ak_factored


def record(number, ok, detail):
    line = f"Criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


@pytest.fixture(scope="module")
def identities():
    start = time.perf_counter()
    cfg = default_config("identities", 20240611, n_min=2, n_max=3, m_min=2, m_max=4, instances=20)
    report = run_suite(cfg)
    return report, time.perf_counter() - start


def test_criterion_1_closed_form(identities):
    report, elapsed = identities
    dev = max(r["measured"]["closed_form_vs_permutation_sum"] for r in report["records"])
    shapes = {(r["shape"]["n"], r["shape"]["m"]) for r in report["records"]}
    ok = dev <= 1e-12 and elapsed < 60 and len(report["records"]) == 6 * 20 and len(shapes) == 6
    assert record(1, ok, f"max dev {dev:.2e} over {len(report['records'])} polynomials in {elapsed:.1f} s")


def test_criterion_2_factorization():
    start = time.perf_counter()
    dev = 0.0
    checked = 0
    for n in range(1, 5):
        for m in range(1, 5):
            for k in range(1, m + 1):
                direct = matrix_Ak_direct(k, n, m).entries
                for via in ("count", "subsets"):
                    dev = max(dev, float(np.max(np.abs(matrix_Ak_factored(k, n, m, via).entries - direct))))
                    checked += 1
    elapsed = time.perf_counter() - start
    ok = dev <= 1e-14 and elapsed < 10
    assert record(2, ok, f"max dev {dev:.2e} over {checked} factorizations in {elapsed:.2f} s")


def test_criterion_3_chain_step_and_case_table(identities):
    report, _ = identities
    recs = report["records"]
    dev = max(r["measured"]["chain_step"] for r in recs)
    violations = sum(r["measured"]["case_table_violations"] for r in recs)
    # each index is classified once per k in 2..m
    covered = all(
        sum(r["measured"]["case_table_counts"].values()) == (r["shape"]["m"] - 1) * r["shape"]["n"] ** r["shape"]["m"]
        for r in recs
    )
    ok = dev <= 1e-12 and violations == 0 and covered and report["summary"]["passed"]
    assert record(3, ok, f"max step dev {dev:.2e}, {violations} case-table violations, full coverage {covered}")


def test_criterion_4_polarization():
    rng = np.random.default_rng(4)
    worst_diag = worst_sym = 0.0
    for n in (2, 3):
        for m in (1, 2, 3, 4):
            P = random_polynomial(n, m, rng)
            S = full_symmetrize(lform_from_poly(P))
            for _ in range(50):
                args = [complex_gaussian(rng, n) for _ in range(m)]
                x = args[0]
                want = evaluate_poly(P, x)
                worst_diag = max(worst_diag, abs(polarize_eval(P, [x] * m) - want) / abs(want))
                want = evaluate_form(S, args)
                worst_sym = max(worst_sym, abs(polarize_eval(P, args) - want) / abs(want))
    ok = worst_diag <= 1e-10 and worst_sym <= 1e-10
    assert record(4, ok, f"diagonal rel err {worst_diag:.2e}, symmetric form rel err {worst_sym:.2e}")


@pytest.mark.slow
def test_criterion_5_certified_chain_step():
    start = time.perf_counter()
    cfg = default_config(
        "theorem2_chain", 5, n_min=2, n_max=3, m_min=2, m_max=2, k_list=(2,), instances=10, grid=64, refine=1
    )
    report = run_suite(cfg)
    elapsed = time.perf_counter() - start
    worst = 0.0
    ok = len(report["records"]) == 20
    for r in report["records"]:
        n = r["shape"]["n"]
        upper = r["measured"]["numerator_bracket"]["upper"]
        lower = r["measured"]["denominator_bracket"]["lower"]
        ok &= r["certified"] and lower >= 1e-3
        ok &= upper <= 2 * 9 * math.log2(2 * n) * lower
        worst = max(worst, upper / (18 * math.log2(2 * n) * lower))
    ok = ok and elapsed < 300
    assert record(5, ok, f"20 certified cases, worst upper/(bound*lower) {worst:.3f}, {elapsed:.1f} s")


@pytest.mark.slow
def test_criterion_6_polarization_norm_bound():
    cfg = default_config("polarization_bound", 6, n_min=2, n_max=3, m_min=2, m_max=2, instances=10)
    report = run_suite(cfg)
    worst = 0.0
    ok = len(report["records"]) == 20
    for r in report["records"]:
        sb = r["measured"]["symmetric_form_bracket"]
        pb = r["measured"]["poly_bracket"]
        rhs = math.e**2 * (pb["lower"] + (pb["upper"] - pb["lower"]))
        ok &= r["certified"] and sb["upper"] <= rhs and r["status"] == "pass"
        worst = max(worst, sb["upper"] / rhs)
    assert record(6, ok, f"20 certified cases, worst upper(S)/(e^2 (lower+width)) {worst:.3f}")


@pytest.mark.slow
def test_criterion_7_multiplier_bounds():
    start = time.perf_counter()
    worst_I = worst_T = 0.0
    ok = True
    for n in range(2, 9):
        spec = NormSpec.lp(math.inf, n)
        mu_I = schur_mu_lower(identity_matrix(n), spec, trials=200, seed=700 + n)
        mu_T = schur_mu_lower(triangle_projection_matrix(n), spec, trials=200, seed=800 + n)
        ok &= mu_I <= 1 + 1e-6 and mu_T <= math.log2(2 * n) * (1 + 1e-6)
        worst_I = max(worst_I, mu_I)
        worst_T = max(worst_T, mu_T / math.log2(2 * n))
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 300
    assert record(
        7, ok, f"max mu(I_n) {worst_I:.4f}, max mu(T_n)/log2(2n) {worst_T:.4f}, {elapsed:.1f} s"
    )


@pytest.mark.slow
def test_criterion_8_growth_sweep_is_report_only():
    cfg = default_config("triangle_projection", 8, n_min=2, n_max=8, p_list=(1.0, 1.5), trials=20)
    report = run_suite(cfg)
    growth = report["summary"]["growth"]
    ok = (
        all(r["status"] == "report" for r in report["records"])
        and set(growth) == {"1.0", "1.5"}
        and all(len(g["mu_lower"]) == 7 for g in growth.values())
        and report["summary"]["passed"]
    )
    slopes = ", ".join(f"p={p}: slope {g['slope_vs_log2_2n']:+.3f}" for p, g in sorted(growth.items()))
    assert record(8, ok, f"report-only sweep n=2..8, {slopes}")


def test_criterion_9_determinism():
    small = {
        "identities": dict(m_max=3, instances=2),
        "theorem2_chain": dict(n_max=2, instances=2),
        "theorem1_poly": dict(n_max=2, instances=2),
        "polarization_bound": dict(n_max=2, instances=2),
        "triangle_projection": dict(n_max=3, trials=4),
    }
    identical = []
    for suite, opts in small.items():
        a = report_to_json(run_suite(default_config(suite, 99, **opts)))
        b = report_to_json(run_suite(default_config(suite, 99, **opts)))
        identical.append(a == b)
    assert record(9, all(identical), f"{sum(identical)}/{len(identical)} suites byte-identical")
