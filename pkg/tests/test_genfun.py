from fractions import Fraction as F

import pytest
from mpmath import mp, mpf

from gegenorm import genfun
from gegenorm.errors import DomainError
from gegenorm.exact import in_exact, jn_exact
from gegenorm.params import GegenbauerParams, JacobiParams

D = 40


def test_legendre_series_is_closed_form():
    # n!/(1)_n · 2/(2n+1) = 2/(2n+1)
    s = genfun.gen_fn_coefficients_i(JacobiParams(F(1, 2), 0, 0), 20, D)
    for n, c in enumerate(s.coefficients):
        assert abs(c - mpf(2) / (2 * n + 1)) < mpf(10) ** -38


def test_chebyshev_first_kind_weight():
    # λ=1, μ=0: every coefficient equals π, i.e. 𝒥 = π/(1-z)
    s = genfun.gen_fn_coefficients_j(GegenbauerParams(1, 0), 25, D)
    assert len(s) == 26 and s.order == 25
    assert max(abs(c - mp.pi) for c in s.coefficients) < mpf(10) ** -38


@pytest.mark.parametrize("lam,a,b", [("0.7", "0.3", "1.2"), ("1.3", "0.2", "-0.3"), ("2.2", "1.1", "0.45")])
def test_scaled_values_match_exact(lam, a, b):
    p = JacobiParams(lam, a, b)
    vals = genfun.gen_fn_coefficients_i(p, 30, D).scaled_values(p.lam)
    for n in range(31):
        ref = in_exact(p, n, D).value
        assert abs(vals[n] - ref) < abs(ref) * mpf(10) ** -22


def test_gegenbauer_series_matches_jn():
    g = GegenbauerParams("0.7", "1.3")
    vals = genfun.gen_fn_coefficients_j(g, 15, D).scaled_values(g.lam)
    for n in range(16):
        ref = jn_exact(g, n, D).value
        assert abs(vals[n] - ref) < abs(ref) * mpf(10) ** -30


def test_i_and_j_series_agree_on_shifted_weight():
    g = GegenbauerParams(F(7, 10), F(13, 10))
    a = genfun.gen_fn_coefficients_j(g, 10, D)
    b = genfun.gen_fn_coefficients_i(JacobiParams(F(7, 10), F(9, 5), F(4, 5)), 10, D)
    for x, y in zip(a.coefficients, b.coefficients):
        assert abs(x - y) < abs(y) * mpf(10) ** -35


def test_rational_form_lambda_one():
    num, expo = genfun.gen_fn_rational_form(1, 1, D)
    assert expo == 1 and len(num) == 1
    assert abs(num[0] - mp.pi) < mpf(10) ** -38


@pytest.mark.parametrize("lam,k", [(F(5, 2), 2), (F(33, 10), 3), (F(9, 2), 4)])
def test_rational_form(lam, k):
    num, expo = genfun.gen_fn_rational_form(lam, k, D)
    assert expo == 2 * k - 1 and len(num) == 2 * k - 1
    assert max(genfun.pn_recurrence_residuals(lam, k, num)) < mpf(10) ** -30
    a = genfun.rational_form_series(num, expo, 12)
    b = genfun.gen_fn_coefficients_j(GegenbauerParams(lam, lam - k), 12, D)
    for x, y in zip(a.coefficients, b.coefficients):
        assert abs(x - y) < abs(y) * mpf(10) ** -30


def test_errors():
    with pytest.raises(ValueError):
        genfun.gen_fn_coefficients_i(JacobiParams(1, 0, 0), -1)
    with pytest.raises(ValueError):
        genfun.TaylorSeries(())
    with pytest.raises(DomainError):
        genfun.rational_form_series([mpf(1), mpf(1)], 1, 3)
    with pytest.raises(DomainError):
        genfun.gen_fn_rational_form(F(1, 2), 1)
