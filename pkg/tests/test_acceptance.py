"""Acceptance suite: one test per criterion, one PASS/FAIL line each in the summary.

Run directly with ``python3 tests/test_acceptance.py`` or through pytest.
"""

import math
import time

import numpy as np
import pytest

from univalence import families as fam
from univalence.checker import (
    check_g_inequalities,
    check_nehari,
    check_self_majorant,
    coefficient_conditions,
    tau_extrapolated,
)
from univalence.families import Candidate, critical_constants, sample_region
from univalence.ode import (
    count_zeros,
    divergence_verdict,
    endpoint_divergence,
    fit_multiplicity,
    hille_zero_oracle,
    solve_even,
)
from univalence.radius import ERRF_TRUE_RADIUS, certify, maximize_radius, parse_scan
from univalence.series import TaylorSeries, mobius_series, schwarzian


def _report(failures):
    if failures:
        pytest.fail("; ".join(failures))


def test_criterion_1_critical_constants():
    t0 = time.perf_counter()
    cc = critical_constants()
    printed = {"lambda0_thm4": 0.40235, "lambda0_thm5": 0.2664, "a0": 0.6830,
               "a1": 0.9114, "a_cross": 0.9714}
    elapsed = time.perf_counter() - t0
    failures = [f"{k} = {cc[k]:.6f} vs {v}" for k, v in printed.items()
                if abs(cc[k] - v) > 1e-4]
    # the closed forms themselves, independent of the printed roundings
    pi2 = math.pi**2
    s = 4 + 5 * pi2 / 4
    assert cc["lambda0_thm4"] == pytest.approx(((4 + pi2) - math.sqrt(16 + pi2**2)) / 8, abs=1e-15)
    assert cc["lambda0_thm5"] == pytest.approx((s - math.sqrt(s * s - 8 * pi2)) / pi2, abs=1e-15)
    if elapsed >= 1.0:
        failures.append(f"runtime {elapsed:.2f}s")
    _report(failures)


def test_criterion_2_errf_radius():
    t0 = time.perf_counter()
    est = maximize_radius("errf", "thm5", [(v,) for v in parse_scan("0.05:0.26:0.01")])
    res = certify(1.365, Candidate("thm5", (0.2,)), grid=8192)
    elapsed = time.perf_counter() - t0
    assert 1.365 <= est.r_lower < ERRF_TRUE_RADIUS
    assert res.certified
    assert elapsed < 10.0


def _boundary_points(theorem, rng, n):
    if theorem == 1:
        out = []
        for a in rng.uniform(0.5, 1.0, n):
            if rng.random() < 0.5:
                out.append((a, fam.thm1_lambda_upper(a) + 1e-3))
            else:
                out.append((a, fam.thm1_lambda_lower(a) - 1e-3))
        return out
    key = {4: "lambda0_thm4", 5: "lambda0_thm5"}[theorem]
    return [(critical_constants()[key] + 1e-3,)]


def test_criterion_3_region_implies_nehari():
    t0 = time.perf_counter()
    rng = np.random.default_rng(20240601)
    failures = []
    for theorem in (1, 2, 3, 4, 5):
        for variant in ("A", "B"):
            pts = sample_region(theorem, variant, 1000, rng)
            bad = [p for p in pts if not check_nehari(Candidate(f"thm{theorem}", p)).verified]
            if bad:
                failures.append(f"thm{theorem}{variant}: {len(bad)} not verified, e.g. {bad[0]}")
    for theorem in (1, 4, 5):
        pts = _boundary_points(theorem, rng, 200)
        flipped = sum(check_nehari(Candidate(f"thm{theorem}", p)).refuted for p in pts)
        if flipped < 0.95 * len(pts):
            failures.append(f"thm{theorem}: only {flipped}/{len(pts)} refuted outside")
    elapsed = time.perf_counter() - t0
    if elapsed >= 120:
        failures.append(f"runtime {elapsed:.1f}s")
    _report(failures)


def test_criterion_4_self_majorance():
    rng = np.random.default_rng(7)
    failures = []
    for theorem in (1, 3):
        for p in sample_region(theorem, "B", 200, rng):
            cert = check_self_majorant(Candidate(f"thm{theorem}", p), N=40)
            if not cert.verified:
                failures.append(f"thm{theorem}{p}: {cert.status}")
    for theorem in (2, 4, 5):
        for p in sample_region(theorem, "B", 200, rng):
            cert = coefficient_conditions(Candidate(f"thm{theorem}", p), N=40)
            if not cert.verified:
                failures.append(f"thm{theorem}{p}: {cert.witness}")
    if not check_self_majorant(Candidate("nehari_mu2", (1.0,))).refuted:
        failures.append("3(1+z^2)^-2 not refuted")
    _report(failures[:5])


def _random_series(rng, n):
    c = np.zeros(n + 1)
    c[1] = rng.uniform(0.5, 2.0) * rng.choice([-1, 1])
    c[2:] = rng.uniform(-1, 1, n - 1) * 0.5 ** np.arange(2, n + 1)
    return TaylorSeries(c)


def test_criterion_5_schwarzian_algebra():
    rng = np.random.default_rng(11)
    f = mobius_series(2.0, 0.3, 0.5, 1.0, 30)
    assert np.max(np.abs(schwarzian(f).coeffs)) <= 1e-12
    n = 30
    worst = 0.0
    for _ in range(100):
        g = _random_series(rng, n)
        a, c, d = rng.uniform(0.5, 2), rng.uniform(-0.5, 0.5), rng.uniform(1, 2)
        T = mobius_series(a, 0.0, c, d, n)
        lhs = schwarzian(g.compose(T))
        rhs = schwarzian(g).compose(T) * T.differentiate() ** 2
        worst = max(worst, float(np.max(np.abs(lhs.coeffs[:21] - rhs.coeffs[:21]))))
    assert worst <= 1e-9
    m = 40
    z = TaylorSeries.monomial(1, m)
    sk = schwarzian(z / ((1 - z) * (1 - z)))
    expect = np.zeros(sk.order + 1)
    expect[0::2] = [-6 * (k + 1) for k in range(len(expect[0::2]))]
    assert np.max(np.abs(sk.coeffs - expect)) <= 1e-10


def test_criterion_6_oscillation_oracle():
    t0 = time.perf_counter()
    failures = []
    drift = 0.0
    for g in (0.5, 1.0, 2.0):
        for eps in (1e-3, 1e-4, 1e-5, 1e-6):
            sol = solve_even(Candidate("hille", (g,)), eps=eps)
            drift = max(drift, sol.wronskian_drift)
            got, want = count_zeros(sol).count, len(hille_zero_oracle(g, eps))
            if got != want:
                failures.append(f"hille({g}) eps={eps}: {got} vs {want}")
    sol = solve_even(Candidate("const_pi", (0.0,)))
    drift = max(drift, sol.wronskian_drift)
    if count_zeros(sol).count != 0:
        failures.append("const_pi(0) has zeros")
    if drift > 1e-8:
        failures.append(f"Wronskian drift {drift:.2e}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 30:
        failures.append(f"runtime {elapsed:.1f}s")
    _report(failures)


def test_criterion_7_tau():
    rng = np.random.default_rng(3)
    cases = []
    for _ in range(100):
        a, lam = rng.uniform(0.5, 1.0), rng.uniform(-0.3, 0.3)
        cases.append((Candidate("thm1", (a, lam)), 4 * a * (1 - a)))
        b = rng.uniform(-0.1, 0.5)
        cases.append((Candidate("thm3", (a, b)), 4 * a * (1 - a)))
        lam, mu = rng.uniform(0.0, 0.6), rng.uniform(0.0, 0.6)
        cases.append((Candidate("thm2", (lam, mu)), 4 * (lam + mu) * (1 - lam - mu)))
        cases.append((Candidate("thm4", (rng.uniform(0, 0.45),)), 0.0))
        cases.append((Candidate("thm5", (rng.uniform(0, 0.3),)), 0.0))
        g = rng.uniform(0, 3)
        cases.append((Candidate("hille", (g,)), 1 + g * g))
    bad = [(c.label(), tau_extrapolated(c), t) for c, t in cases
           if abs(tau_extrapolated(c) - t) > 1e-6]
    assert not bad, bad[:3]


def test_criterion_8_g_inequalities():
    certs = check_g_inequalities(10_000)
    assert len(certs) == 4
    bad = {k: c.witness for k, c in certs.items() if not c.verified}
    assert not bad, bad


def test_criterion_9_divergence():
    failures = []
    for a, lam in [(0.55, 0.0), (0.75, 0.1), (0.9, -0.2), (1.0, 0.05)]:
        rep = endpoint_divergence(Candidate("thm1", (a, lam)))
        if abs(rep.m - a) > 2e-2 or not rep.diverges:
            failures.append(f"thm1({a}, {lam}): m = {rep.m:.4f}")
    for lam, mu in [(0.3, 0.3), (0.25, 0.5), (0.5, 0.2)]:
        rep = endpoint_divergence(Candidate("thm2", (lam, mu)))
        if abs(rep.m - (lam + mu)) > 2e-2 or not rep.diverges:
            failures.append(f"thm2({lam}, {mu}): m = {rep.m:.4f}")
    verdicts = []
    for m in (0.3, 0.45, 0.49, 0.51, 0.55, 0.8):
        est, _ = fit_multiplicity(lambda x, m=m: (1 - x) ** m)
        verdicts.append(divergence_verdict(est).diverges)
    if verdicts != [False, False, False, True, True, True]:
        failures.append(f"synthetic verdicts {verdicts}")
    _report(failures)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-v"]))
