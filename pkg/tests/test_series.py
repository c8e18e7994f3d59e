import json
import math

import numpy as np
import pytest

from univalence.errors import (
    CompositionNonzeroConstant,
    DivisionByZeroConstantTerm,
    InvalidExponent,
    NotLocallyUnivalent,
    OverflowAtOrder,
)
from univalence.series import (
    TaylorSeries,
    cos_series,
    dirichlet_lambda,
    euler_numbers,
    exp_series,
    mobius_series,
    schwarzian,
    sec_series,
    series_arith,
    sin_series,
    tan_half_series,
)


def poly(*c):
    return TaylorSeries(list(c))


def test_product_of_linear_factors():
    a = TaylorSeries([1.0, 1.0, 0.0, 0.0])
    b = TaylorSeries([1.0, -1.0, 0.0, 0.0])
    assert np.array_equal(series_arith(a, b, "mul").coeffs, [1.0, 0.0, -1.0, 0.0])


def test_geometric_series():
    one = TaylorSeries.constant(1.0, 20)
    g = series_arith(one, TaylorSeries([1.0, -1.0] + [0.0] * 19), "div")
    assert np.array_equal(g.coeffs, np.ones(21))


def test_exp_derivative_is_exp():
    e = exp_series(30)
    d = series_arith(e, None, "differentiate")
    assert d.order == 29
    np.testing.assert_allclose(d.coeffs, e.coeffs[:30], rtol=1e-15)


def test_integrate_fixes_constant_zero():
    s = series_arith(cos_series(20), None, "integrate")
    assert s.coeffs[0] == 0.0
    np.testing.assert_allclose(s.coeffs[:21], sin_series(20).coeffs, atol=1e-17)


def test_order_is_min_of_operands():
    a, b = exp_series(10), exp_series(7)
    for op in ("add", "sub", "mul", "div"):
        assert series_arith(a, b, op).order == 7


def test_division_by_zero_constant_term():
    with pytest.raises(DivisionByZeroConstantTerm):
        exp_series(5) / TaylorSeries([0.0, 1.0, 0.0, 0.0, 0.0, 0.0])


def test_compose_rejects_nonzero_constant():
    with pytest.raises(CompositionNonzeroConstant):
        exp_series(5).compose(cos_series(5))


def test_compose_exp_of_sin_against_direct():
    s = exp_series(25).compose(sin_series(25))
    x = 0.3
    assert abs(s(x) - math.exp(math.sin(x))) < 1e-14


def test_parity_is_validated():
    with pytest.raises(ValueError):
        TaylorSeries([1.0, 1.0, 0.0], parity="even")
    assert TaylorSeries([1.0, 0.0, 3.0]).parity == "even"
    assert TaylorSeries([0.0, 2.0, 0.0, 1.0]).parity == "odd"


def test_nonfinite_coefficients_rejected():
    with pytest.raises(ValueError):
        TaylorSeries([1.0, float("nan")])


def test_json_roundtrip_is_exact():
    s = tan_half_series(21)
    d = json.loads(s.to_json())
    assert set(d) == {"order", "parity", "coeffs"}
    assert d["parity"] == "odd" and d["order"] == 21
    assert TaylorSeries.from_json(s.to_json()) == s


# -- lambda(p) ----------------------------------------------------------------------

def test_lambda_two_and_four():
    assert abs(dirichlet_lambda(2) - math.pi**2 / 8) <= 1e-14
    assert abs(dirichlet_lambda(4) - math.pi**4 / 96) <= 1e-14
    assert abs(dirichlet_lambda(6) - math.pi**6 / 960) <= 1e-14


def test_lambda_exceeds_one_and_decreases():
    # beyond p ~ 33, 3**-p drops below double resolution and lambda rounds to 1
    vals = [dirichlet_lambda(p) for p in range(2, 30)]
    assert all(v > 1 for v in vals)
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert dirichlet_lambda(60) >= 1.0


@pytest.mark.parametrize("p", [1, 0, -3, 2.5])
def test_lambda_invalid_exponent(p):
    with pytest.raises(InvalidExponent):
        dirichlet_lambda(p)


# -- tan, sec, Euler ---------------------------------------------------------------------

def test_tan_series_leading_coefficient():
    t = tan_half_series(40)
    assert abs(t.coeffs[1] - math.pi / 2) < 1e-15
    # scaled by pi/2 the odd coefficients are 2 lambda(2k+2)
    scaled = (math.pi / 2) * t
    for k in range(10):
        assert abs(scaled.coeffs[2 * k + 1] - 2 * dirichlet_lambda(2 * k + 2)) < 1e-13


def test_tan_series_value_at_half():
    assert abs(tan_half_series(40)(0.5) - 1.0) <= 1e-10


def test_tan_series_positive_and_decreasing_to_two():
    t = (math.pi / 2) * tan_half_series(80)
    odd = t.coeffs[1::2]
    assert np.all(odd > 0)
    # strictly decreasing until the gap to 2 drops below one ulp
    assert np.all(np.diff(odd[:16]) < 0)
    assert np.all(np.diff(odd) <= 0)
    assert abs(odd[-1] - 2.0) < 1e-12


def test_euler_numbers_small():
    assert euler_numbers(4) == [1, -1, 5, -61, 1385]


def test_euler_numbers_growth_bound():
    e = euler_numbers(30)
    for m in range(1, 31):
        assert abs(e[m]) >= 5 ** (m - 1)
    assert abs(e[2]) == 5


def _beta(s):
    if s == 1:
        return math.pi / 4
    return math.fsum((-1) ** n / (2 * n + 1) ** s for n in range(20000))


def test_euler_numbers_beta_identity():
    # E_2m = 2 (-1)^m (2/pi)^(2m+1) (2m)! beta(2m+1); without the factor 2
    # the right side is exactly half of E_2m (m = 0 gives 1/2, not 1)
    e = euler_numbers(12)
    for m in range(13):
        s = 2 * m + 1
        pred = (-1) ** m * (2 / math.pi) ** s * math.factorial(2 * m) * _beta(s)
        assert abs(2 * pred - e[m]) <= 1e-10 * abs(e[m])
        assert abs(pred / e[m] - 0.5) <= 1e-10


def test_euler_numbers_overflow_reports_order():
    with pytest.raises(OverflowAtOrder) as info:
        euler_numbers(400)
    assert info.value.order % 2 == 0 and info.value.order > 100


def test_sec_series_first_coefficients():
    s = sec_series(40)
    assert s.coeffs[0] == 1.0 and s.coeffs[2] == 0.5
    assert np.all(s.coeffs[::2] > 0)


def test_sec_series_value_at_one():
    exact = 1 / math.cos(1.0)
    err40 = abs(sec_series(40)(1.0) - exact)
    # the x^42 tail at x = 1 is about 2 (4/pi) (2/pi)^43 / (1 - (2/pi)^2)
    tail = 2 * (4 / math.pi) * (2 / math.pi) ** 43 / (1 - (2 / math.pi) ** 2)
    assert err40 <= tail
    assert abs(sec_series(60)(1.0) - exact) <= 1e-9


def test_sec_times_cos_is_one():
    prod = sec_series(40) * cos_series(40)
    np.testing.assert_allclose(prod.coeffs, [1.0] + [0.0] * 40, atol=1e-12)


# -- Schwarzian ---------------------------------------------------------------------

def test_schwarzian_of_mobius_vanishes():
    f = mobius_series(2.0, 0.3, 0.5, 1.0, 30)
    assert np.max(np.abs(schwarzian(f).coeffs)) <= 1e-12


def test_schwarzian_of_koebe():
    n = 40
    z = TaylorSeries.monomial(1, n)
    koebe = z / ((1 - z) * (1 - z))
    s = schwarzian(koebe)
    assert s.order == n - 3
    expect = np.zeros(n - 2)
    expect[0::2] = [-6 * (k + 1) for k in range(len(expect[0::2]))]
    np.testing.assert_allclose(s.coeffs, expect, atol=1e-10)


def test_schwarzian_requires_local_univalence():
    with pytest.raises(NotLocallyUnivalent):
        schwarzian(TaylorSeries([0.0, 0.0, 1.0, 0.0, 0.0]))


def test_schwarzian_odd_input_gives_even_output():
    s = schwarzian(sin_series(25))
    assert np.max(np.abs(s.coeffs[1::2])) == 0.0


def test_schwarzian_of_ratio_is_twice_p():
    # u'' + p u = 0 with p = 1/(1+x^2) solved by series recurrence
    n = 24
    p = (1 / TaylorSeries([1.0, 0.0, 1.0] + [0.0] * (n - 2))).coeffs

    def solve(u0, u1):
        u = [u0, u1] + [0.0] * (n - 1)
        for k in range(n - 1):
            conv = sum(p[j] * u[k - j] for j in range(k + 1))
            u[k + 2] = -conv / ((k + 2) * (k + 1))
        return TaylorSeries(u)

    u, v = solve(1.0, 0.0), solve(0.0, 1.0)
    s = schwarzian(v / u)
    np.testing.assert_allclose(s.coeffs[:20], 2 * p[:20], atol=1e-9)
