from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from gegenorm import exact
from gegenorm.errors import DomainError
from gegenorm.params import GegenbauerParams, JacobiParams
from gegenorm.quadrature import in_oracle

D = 40
TOL25 = mpf(10) ** -25

lams = st.sampled_from(["0.3", "0.7", "1.2", "1.9", "2.5"])
weights = st.sampled_from(["-0.5", "-0.2", "0", "0.3", "1.2", "2.1"])
mus = st.sampled_from(["-0.2", "0.4", "1.0", "1.7", "2.3"])


def rel(a, b):
    return abs(a - b) / abs(b)


@pytest.mark.parametrize("lam", ["0.3", F(1, 2), 1, "2.5"])
def test_in_n_zero_is_interval_length(lam):
    assert rel(exact.in_exact(JacobiParams(lam, 0, 0), 0, D).value, 2) < mpf(10) ** -38


def test_in_legendre():
    r = exact.in_exact(JacobiParams(F(1, 2), 0, 0), 3, D)
    assert rel(r.value, mpf(2) / 7) < mpf(10) ** -38
    assert r.method == "exact5F4"


def test_in_against_oracle():
    p = JacobiParams("0.7", "0.3", "1.2")
    assert rel(exact.in_exact(p, 5, D).value, in_oracle(p, 5, D)) < TOL25


@pytest.mark.parametrize("n", [0, 1, 7, 40])
def test_jn_chebyshev_u(n):
    assert rel(exact.jn_exact(GegenbauerParams(1, 1), n, D).value, mp.pi / 2) < mpf(10) ** -35


@pytest.mark.parametrize("lam,mu", [("0.7", "1.3"), ("2.2", "-0.3"), (1, F(1, 2))])
def test_jn_n_zero(lam, mu):
    m = mpf(str(mu)) if not isinstance(mu, F) else mpf(mu.numerator) / mu.denominator
    ref = mp.sqrt(mp.pi) * mp.gamma(m + mpf(1) / 2) / mp.gamma(m + 1)
    assert rel(exact.jn_exact(GegenbauerParams(lam, mu), 0, D).value, ref) < mpf(10) ** -35


def test_jn_exact_vs_connection_example():
    g = GegenbauerParams("0.7", "1.3")
    assert rel(exact.jn_exact(g, 12, D).value, exact.jn_connection(g, 12, D).value) < TOL25


def test_connection_lambda_equals_mu_single_term():
    lam = mpf("0.9")
    n = 6
    ref = mp.pi * 2 ** (1 - 2 * lam) * mp.gamma(n + 2 * lam) / (mp.factorial(n) * (n + lam) * mp.gamma(lam) ** 2)
    assert rel(exact.jn_connection(GegenbauerParams("0.9", "0.9"), n, D).value, ref) < mpf(10) ** -35


def test_connection_integer_example():
    g = GegenbauerParams(1, 2)
    assert rel(exact.jn_connection(g, 4, D).value, exact.jn_exact(g, 4, D).value) < mpf(10) ** -35


def test_connection_positive_terms():
    r = exact.jn_connection(GegenbauerParams("0.3", "0.9"), 25, D)
    assert r.digits_lost == 0
    assert rel(r.value, exact.jn_exact(GegenbauerParams("0.3", "0.9"), 25, D).value) < TOL25


@pytest.mark.parametrize("lam,mu,ref", [(1, 1, lambda n: mp.pi / 2), (F(1, 2), F(1, 2), lambda n: mpf(2) / (2 * n + 1))])
def test_recurrence_closed_forms(lam, mu, ref):
    for r in exact.jn_recurrence(GegenbauerParams(lam, mu), 30, D):
        assert rel(r.value, ref(r.n)) < mpf(10) ** -30
        assert r.method == "recurrence"


def test_recurrence_matches_exact():
    g = GegenbauerParams("0.7", "0.2")
    for r in exact.jn_recurrence(g, 50, D):
        assert rel(r.value, exact.jn_exact(g, r.n, D).value) < mpf(10) ** -20
        assert r.error_estimate is not None


@given(lams, mus, st.integers(0, 50))
def test_recurrence_residual(lam, mu, n):
    g = GegenbauerParams(lam, mu)
    vals = [exact.jn_exact(g, n + i, D).value for i in range(3)]
    assert exact.recurrence_residual(g, n, *vals) <= mpf(10) ** -20


@given(lams, mus, st.integers(0, 40))
def test_two_formula_identity(lam, mu, n):
    g = GegenbauerParams(lam, mu)
    assert rel(exact.jn_exact(g, n, D).value, exact.jn_connection(g, n, D).value) < TOL25


@given(lams, weights, weights, st.integers(0, 30))
def test_alpha_beta_symmetry_and_positivity(lam, a, b, n):
    x = exact.in_exact(JacobiParams(lam, a, b), n, D).value
    y = exact.in_exact(JacobiParams(lam, b, a), n, D).value
    assert x > 0
    assert rel(x, y) < mpf(10) ** -30


@given(lams, mus, st.integers(0, 25))
def test_shifted_weight(lam, mu, n):
    m = F(mu)
    x = exact.in_exact(JacobiParams(lam, m + F(1, 2), m - F(1, 2)), n, D).value
    assert rel(x, exact.jn_exact(GegenbauerParams(lam, m), n, D).value) < mpf(10) ** -30


def test_b_coefficient_examples():
    assert exact.b_coefficient(1, 0, 0) == 2
    assert exact.b_coefficient(1, 0, 1) == 1
    assert exact.b_coefficient(0, 1, 0) == 1
    for ell in range(4):
        assert exact.b_coefficient(3, 1, ell) == exact.b_coefficient_sum(3, 1, ell)


@given(st.integers(0, 8), st.sampled_from([0, 1]), st.integers(0, 8))
def test_b_coefficient_closed_form(m, eta, ell):
    if ell > m:
        return
    assert exact.b_coefficient(m, eta, ell) == exact.b_coefficient_sum(m, eta, ell)


def test_alpha_beta_connection_k1_is_gegenbauer():
    for n in (0, 3, 9):
        x = exact.in_via_alpha_beta_connection(JacobiParams("0.8", F(3, 10), F(13, 10)), n, D).value
        y = exact.jn_exact(GegenbauerParams("0.8", F(4, 5)), n, D).value
        assert rel(x, y) < mpf(10) ** -30


@pytest.mark.parametrize("lam,a,k,n", [(1, 0, 2, 3), (F(3, 5), F(-1, 5), 5, 10)])
def test_alpha_beta_connection_examples(lam, a, k, n):
    p = JacobiParams(lam, a, a + k)
    assert rel(exact.in_via_alpha_beta_connection(p, n, D).value, exact.in_exact(p, n, D).value) < mpf(10) ** -22


def test_alpha_beta_connection_needs_integer_gap():
    with pytest.raises(DomainError):
        exact.in_via_alpha_beta_connection(JacobiParams(1, "0.2", "0.7"), 3, D)


def test_lambda_rho_connection_legendre_inner():
    p = JacobiParams(1, 0, 0)
    r = exact.in_via_lambda_rho_connection(p, F(1, 2), 4, lambda k: mpf(2) / (2 * k + 1), D)
    assert rel(r.value, exact.in_exact(p, 4, D).value) < TOL25


def test_lambda_rho_connection_same_lambda_and_n_zero():
    p = JacobiParams("0.8", "0.3", "1.2")
    inner = lambda k: exact.in_exact(p, k, D + 10).value
    for n in range(11):
        r = exact.in_via_lambda_rho_connection(p, "0.8", n, inner, D)
        assert rel(r.value, inner(n)) < TOL25
    mass = exact.jacobi_mass(mpf("0.3"), mpf("1.2"))
    assert rel(exact.in_via_lambda_rho_connection(p, "0.4", 0, lambda k: mass, D).value, mass) < TOL25


def test_lambda_minus_k_examples():
    for n in (0, 5, 20):
        assert rel(exact.jn_lambda_minus_k(1, 1, n, D).value, (n + 1) * mp.pi) < mpf(10) ** -35
    x = exact.jn_lambda_minus_k(F(5, 2), 1, 7, D).value
    assert rel(x, exact.jn_exact(GegenbauerParams(F(5, 2), F(3, 2)), 7, D).value) < TOL25
    j0 = mp.sqrt(mp.pi) * mp.gamma(mpf(3) / 2) / mp.gamma(2)
    assert rel(exact.jn_lambda_minus_k(3, 2, 0, D).value, j0) < mpf(10) ** -35


def test_lambda_minus_k_dirichlet_kernel():
    # ∫_0^π (sin((n+1)θ)/sin θ)² dθ = (n+1)π, evaluated independently by mpmath
    n = 4
    f = lambda t: (mp.sin((n + 1) * t) / mp.sin(t)) ** 2
    with mp.workdps(30):
        val = mp.quad(f, [0, mp.pi / 2, mp.pi])
    assert abs(val - exact.jn_lambda_minus_k(1, 1, n, D).value) < mpf(10) ** -25


def test_lambda_minus_k_domain():
    with pytest.raises(DomainError):
        exact.jn_lambda_minus_k(F(1, 2), 1, 3, D)


@pytest.mark.parametrize("lam,k", [(F(5, 2), 2), (F(33, 10), 3), (F(7, 10), 1)])
def test_lambda_minus_k_polynomial_degree(lam, k):
    # J_n · n!/(2λ)_n is a polynomial of degree 2k-2: differences of order 2k-1 vanish
    lr = mpf(lam.numerator) / lam.denominator
    vals = []
    for n in range(2 * k + 3):
        v = exact.jn_lambda_minus_k(lam, k, n, D).value
        vals.append(v * mp.factorial(n) / mp.rf(2 * lr, n))
    for _ in range(2 * k - 1):
        vals = [b - a for a, b in zip(vals, vals[1:])]
    assert max(abs(v) for v in vals) < mpf(10) ** -28


@pytest.mark.parametrize("lam,k,n", [(1, 0, 3), (F(1, 2), 1, 6), (F(4, 5), 3, 2), (F(17, 10), 2, 11)])
def test_lambda_plus_k(lam, k, n):
    ref = exact.jn_exact(GegenbauerParams(lam, lam + k), n, D).value
    assert rel(exact.jn_lambda_plus_k(lam, k, n, D).value, ref) < TOL25
    if k == 0 and lam == 1:
        assert rel(ref, mp.pi / 2) < mpf(10) ** -35


def test_dispatchers():
    r = exact.evaluate_j(GegenbauerParams("0.7", "1.3"), 200, D)
    assert r.value > 0 and r.method in ("exact4F3", "connection")
    r = exact.evaluate_i(JacobiParams("0.7", "0.3", "0.3"), 10, D)
    assert rel(r.value, exact.jn_exact(GegenbauerParams("0.7", "0.8"), 10, D).value) < mpf(10) ** -30


def test_negative_n_rejected():
    with pytest.raises((DomainError, ValueError)):
        exact.in_exact(JacobiParams(1, 0, 0), -1, D)


def test_result_serialises():
    d = exact.jn_exact(GegenbauerParams(1, 1), 3, D).to_dict()
    assert set(d) >= {"params", "n", "method", "value", "diagnostics"}
    assert abs(mpf(d["value"]) - mp.pi / 2) < mpf(10) ** -35
