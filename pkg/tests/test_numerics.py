import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from gegenorm import numerics
from gegenorm.errors import PoleError, PrecisionExhausted
from gegenorm.numerics import CancellationReport, CompensatedSum

reals = st.floats(min_value=0.05, max_value=8, allow_nan=False)
TOL = mpf(10) ** -35


def close(a, b, tol=TOL):
    return abs(a - b) <= tol * max(abs(b), 1)


def test_pochhammer_examples():
    assert numerics.pochhammer(mpf(1) / 2, 3) == mpf(15) / 8
    assert numerics.pochhammer(-3, 5) == 0
    assert numerics.pochhammer(2, -1) == 1
    assert numerics.pochhammer(mpf("0.3"), 0) == 1


def test_pochhammer_negative_index_pole():
    with pytest.raises(PoleError):
        numerics.pochhammer(1, -2)


def test_pochhammer_large_k_matches_product():
    a = mpf("0.37")
    prod = mpf(1)
    for j in range(100):
        prod *= a + j
    assert close(numerics.pochhammer(a, 100), prod)


def test_pochhammer_large_k_negative_integer():
    assert numerics.pochhammer(-70, 71) == 0
    assert numerics.pochhammer(-70, 70) == mp.factorial(70)


@given(reals, st.integers(0, 30), st.integers(0, 30))
def test_pochhammer_splits(a, j, k):
    a = mpf(a)
    lhs = numerics.pochhammer(a, j + k)
    rhs = numerics.pochhammer(a, j) * numerics.pochhammer(a + j, k)
    assert close(lhs, rhs)


@given(reals, st.integers(0, 25))
def test_pochhammer_duplication(a, k):
    a = mpf(a)
    lhs = numerics.pochhammer(2 * a, 2 * k)
    rhs = 4**k * numerics.pochhammer(a, k) * numerics.pochhammer(a + mpf(1) / 2, k)
    assert close(lhs, rhs)


@given(reals, st.integers(1, 20))
def test_pochhammer_negative_index_inverse(a, k):
    a = mpf(a) + mpf(1) / 3
    assert close(numerics.pochhammer(a, -k) * numerics.pochhammer(a - k, k), 1)


@given(reals)
def test_gamma_recurrence(x):
    x = mpf(x)
    assert close(numerics.gamma_fn(x + 1), x * numerics.gamma_fn(x))


@given(reals)
def test_digamma_recurrence(x):
    x = mpf(x)
    assert close(numerics.digamma(x + 1), numerics.digamma(x) + 1 / x)


def test_digamma_known_values():
    assert close(numerics.digamma(1), -mp.euler)
    assert close(numerics.digamma(mpf(1) / 2), -mp.euler - 2 * mp.log(2))


@given(st.floats(min_value=-6.9, max_value=-0.1).filter(lambda t: abs(t - round(t)) > 1e-3))
def test_log_gamma_reflection_and_sign(x):
    x = mpf(x)
    g = mp.gamma(x)
    assert close(numerics.log_gamma(x), mp.log(abs(g)), mpf(10) ** -30)
    assert numerics.gamma_sign(x) == (1 if g > 0 else -1)


@pytest.mark.parametrize("fn", [numerics.gamma_fn, numerics.log_gamma, numerics.digamma, numerics.gamma_sign])
def test_poles_raise(fn):
    with pytest.raises(PoleError):
        fn(-2)


def test_rgamma_vanishes_at_poles():
    assert numerics.rgamma(-3) == 0
    assert close(numerics.rgamma(mpf(1) / 2), 1 / mp.sqrt(mp.pi))


def test_binomial_examples():
    assert numerics.binomial_real(5, 2) == 10
    assert numerics.binomial_real(3, 5) == 0
    assert numerics.binomial_real(-1, 7) == -1
    assert close(numerics.binomial_real(mpf(1) / 2, 2), mpf(-1) / 8)


@given(st.floats(min_value=-5, max_value=5), st.integers(1, 80))
def test_binomial_pascal(top, n):
    t = mpf(top)
    lhs = numerics.binomial_real(t, n)
    rhs = numerics.binomial_real(t - 1, n) + numerics.binomial_real(t - 1, n - 1)
    assert close(lhs, rhs, mpf(10) ** -28)


def test_binomial_large_integer_top():
    assert numerics.binomial_real(-3, 100) == mp.binomial(102, 100)
    assert numerics.binomial_real(120, 100) == mp.binomial(120, 100)


def test_harmonic():
    assert numerics.harmonic(1) == 0
    assert close(numerics.harmonic(5), mpf(25) / 12)
    assert close(numerics.harmonic(3000), mp.digamma(3000) + mp.euler)
    with pytest.raises(ValueError):
        numerics.harmonic(0)


def test_compensated_sum_cancellation():
    acc = CompensatedSum()
    for t in (mpf(10) ** 30, mpf(1), -(mpf(10) ** 30)):
        acc.add(t)
    assert acc.value == 1
    rep = acc.report()
    assert rep.max_abs_term == mpf(10) ** 30
    assert math.isclose(rep.digits_lost, 30, abs_tol=1e-9)


def test_report_edges():
    assert CancellationReport(mpf(0), mpf(0)).digits_lost == 0
    assert CancellationReport(mpf(1), mpf(0)).digits_lost == math.inf
    assert CancellationReport.exact(3).digits_lost == 0


def test_guard_raises():
    with pytest.raises(PrecisionExhausted):
        numerics.guard(CancellationReport(mpf(10) ** 35, mpf(1)), 40)
    numerics.guard(CancellationReport(mpf(10) ** 20, mpf(1)), 40)


def test_escalate_raises_working_precision():
    def compute():
        big = mpf(10) ** 60
        acc = CompensatedSum()
        for t in (big, mpf(1) / 3, -big):
            acc.add(t)
        return acc.value, acc.report()

    value, report, work = numerics.escalate(compute, 30)
    assert work > 60
    assert close(value, mpf(1) / 3, mpf(10) ** -29)


def test_escalate_gives_up():
    def compute():
        return mpf(0), CancellationReport(mpf(1), mpf(0))

    with pytest.raises(PrecisionExhausted):
        numerics.escalate(compute, 20, max_digits=200)


def test_to_real_and_strings():
    assert numerics.to_real(Fraction(3, 10)) == mpf(3) / 10
    s = numerics.to_decimal_string(mpf(2) / 7)
    assert numerics.from_decimal_string(s) == mpf(2) / 7
    assert numerics.is_exact(3) and numerics.is_exact(Fraction(1, 2))
    assert not numerics.is_exact(0.5) and not numerics.is_exact(True)
    with pytest.raises(TypeError):
        numerics.to_real(True)
