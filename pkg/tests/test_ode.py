import csv
import io
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from univalence.errors import EvaluationFailure, OscillatoryNearEndpoint, ZeroCrossed
from univalence.families import Candidate, generator, p_eval
from univalence.ode import (
    count_zeros,
    divergence_verdict,
    endpoint_divergence,
    fit_multiplicity,
    hille_zero_oracle,
    integrate,
    quotient_f,
    sigma_probe,
    solve_even,
    solve_from,
)

XS = np.linspace(0.0, 0.99, 100)


def _max_rel_dev(c, sol):
    u = generator(c)
    scale = u(0.0)
    return max(abs(sol.evaluate(x) - u(x) / scale) / abs(u(x) / scale) for x in XS)


def test_const_pi_is_cosine():
    sol = solve_even(Candidate("const_pi", (0.0,)))
    for x in XS:
        assert abs(sol.evaluate(x) - math.cos(math.pi * x / 2)) <= 1e-8


@pytest.mark.parametrize("c", [Candidate("thm1", (0.75, 0.1)), Candidate("thm1", (0.5, 0.0)),
                               Candidate("thm2", (0.3, 0.3)), Candidate("thm3", (0.8, 0.2)),
                               Candidate("thm4", (0.3,)), Candidate("thm5", (0.2,)),
                               Candidate("beesack", (0.4,))],
                         ids=lambda c: c.label())
def test_matches_generator(c):
    assert _max_rel_dev(c, solve_even(c)) <= 1e-6


def test_hille_closed_form():
    sol = solve_even(Candidate("hille", (1.0,)))
    for x in np.linspace(0, 0.9, 50):
        exact = math.sqrt(1 - x * x) * math.cos(0.5 * math.log((1 + x) / (1 - x)))
        assert abs(sol.evaluate(x) - exact) <= 1e-6


def test_initial_values_and_wronskian():
    sol = solve_even(Candidate("thm5", (0.2,)))
    assert tuple(sol.states[0]) == (1.0, 0.0, 0.0, 1.0)
    assert sol.wronskian_drift <= 1e-8


def test_eps_range_enforced():
    with pytest.raises(ValueError):
        solve_even(Candidate("hille", (1.0,)), eps=0.1)
    with pytest.raises(ValueError):
        solve_even(Candidate("hille", (1.0,)), eps=0.0)


def test_nonfinite_p_is_reported():
    with pytest.raises(EvaluationFailure):
        integrate(lambda x: float("nan"), 0.0, 0.5, (1.0, 0.0, 0.0, 1.0))


def test_csv_export():
    sol = solve_even(Candidate("const_pi", (0.0,)), eps=1e-2)
    rows = list(csv.reader(io.StringIO(sol.to_csv())))
    assert rows[0] == ["x", "u", "du"]
    assert len(rows) == len(sol.nodes) + 1
    assert float(rows[1][1]) == 1.0


# -- zeros ---------------------------------------------------------------------

@pytest.mark.parametrize("gamma", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("eps", [1e-3, 1e-4, 1e-5, 1e-6])
def test_hille_zero_count(gamma, eps):
    sol = solve_even(Candidate("hille", (gamma,)), eps=eps)
    rep = count_zeros(sol)
    oracle = hille_zero_oracle(gamma, eps)
    assert rep.count == len(oracle)
    np.testing.assert_allclose(rep.locations, oracle, atol=1e-8)
    assert sol.wronskian_drift <= 1e-8


def test_zero_free_cases():
    assert count_zeros(solve_even(Candidate("const_pi", (0.0,)))).count == 0
    assert count_zeros(solve_even(Candidate("thm5", (0.2,)))).count == 0


def test_zeros_respect_sturm_spacing():
    c = Candidate("hille", (3.0,))
    zs = solve_even(c).zeros
    assert len(zs) >= 3
    assert all(b > a for a, b in zip(zs, zs[1:]))
    for a, b in zip(zs, zs[1:]):
        pmax = float(np.max(p_eval(c, np.linspace(a, b, 200))))
        assert b - a >= math.pi / math.sqrt(pmax) * (1 - 1e-9)


def test_sturm_comparison():
    eps = 1e-5
    for g1, g2 in [(2.0, 1.0), (1.5, 0.5), (3.0, 2.5)]:
        s1 = solve_even(Candidate("hille", (g1,)), eps=eps)
        s2 = solve_even(Candidate("hille", (g2,)), eps=eps)
        for right in (0.9, 0.99, 0.999, 1 - eps):
            n1 = sum(z <= right for z in s1.zeros)
            n2 = sum(z <= right for z in s2.zeros)
            assert n1 >= n2 - 1


def test_solve_from_interior_point():
    c = Candidate("const_pi", (0.0,))
    x0 = 0.3
    k = math.pi / 2
    sol = solve_from(c, x0, math.cos(k * x0), -k * math.sin(k * x0), eps=1e-3)
    assert abs(sol.evaluate(0.8) - math.cos(k * 0.8)) < 1e-9
    assert sol.wronskian_drift <= 1e-8


# -- quotient -----------------------------------------------------------------------

def test_quotient_thm1_half_is_atanh():
    sol = solve_even(Candidate("thm1", (0.5, 0.0)))
    for x in (0.1, 0.5, 0.9, 0.99):
        assert quotient_f(sol, x) == pytest.approx(math.atanh(x), rel=1e-8)


def test_quotient_const_pi_is_tan():
    sol = solve_even(Candidate("const_pi", (0.0,)))
    for x in (0.2, 0.7, 0.95):
        assert quotient_f(sol, x) == pytest.approx((2 / math.pi) * math.tan(math.pi * x / 2),
                                                   rel=1e-8)


def test_quotient_odd_zero_and_increasing():
    sol = solve_even(Candidate("thm5", (0.2,)))
    assert quotient_f(sol, 0.0) == 0.0
    assert quotient_f(sol, -0.4) == -quotient_f(sol, 0.4)
    vals = [quotient_f(sol, x) for x in np.linspace(0.05, 0.99, 25)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_quotient_cross_check_with_v_over_u():
    sol = solve_even(Candidate("thm2", (0.3, 0.3)))
    q, vu = quotient_f(sol, 0.8, cross_check=True)
    assert q == pytest.approx(vu, rel=1e-8)


def test_quotient_zero_crossed():
    sol = solve_even(Candidate("hille", (2.0,)))
    with pytest.raises(ZeroCrossed):
        quotient_f(sol, 0.99)


# -- endpoint behaviour -------------------------------------------------------------

def test_divergence_thm1():
    rep = endpoint_divergence(Candidate("thm1", (0.75, 0.1)))
    assert rep.diverges and rep.m == pytest.approx(0.75, abs=2e-2)
    assert rep.analytic_m == 0.75


def test_divergence_thm2():
    rep = endpoint_divergence(Candidate("thm2", (0.3, 0.3)))
    assert rep.diverges and rep.m == pytest.approx(0.6, abs=2e-2)


def test_divergence_trig_families_simple_zero():
    for c in (Candidate("thm4", (0.3,)), Candidate("thm5", (0.2,))):
        assert endpoint_divergence(c).m == pytest.approx(1.0, abs=2e-2)


def test_divergence_oscillatory():
    with pytest.raises(OscillatoryNearEndpoint):
        endpoint_divergence(Candidate("hille", (1.0,)))


def test_converges_for_small_m():
    m, _ = fit_multiplicity(lambda x: (1 - x) ** 0.4)
    rep = divergence_verdict(m)
    assert rep.verdict == "converges" and not rep.boundary


def test_boundary_flag():
    assert divergence_verdict(0.5).boundary
    assert divergence_verdict(0.5 - 5e-7).diverges
    assert not divergence_verdict(0.5 - 2e-6).diverges


def test_report_json_fields():
    d = endpoint_divergence(Candidate("thm1", (0.6, 0.0))).to_json()
    assert {"m", "r_squared", "k_range"} <= set(d)
    assert d["k_range"] == [8, 20]


@settings(max_examples=50, deadline=None)
@given(m=st.floats(0.05, 2.0), c=st.floats(-0.5, 0.5))
def test_synthetic_multiplicity_recovered(m, c):
    est, r2 = fit_multiplicity(lambda x: (1 - x) ** m * math.exp(c * x * x) * (1 + x) ** m)
    assert est == pytest.approx(m, abs=1e-6)
    if abs(m - 0.5) > 1e-5:
        assert divergence_verdict(est).diverges == (m > 0.5)


# -- sigma probe ----------------------------------------------------------------------

def test_sigma_probe_oscillates_for_large_lambda():
    rep = sigma_probe(4.0)
    assert rep.count >= 1
    assert rep.locations[-1] > 0.99


def test_sigma_probe_quiet_for_small_lambda():
    assert sigma_probe(0.25).count == 0


def test_sigma_probe_rejects_nonpositive():
    with pytest.raises(ValueError):
        sigma_probe(0.0)
