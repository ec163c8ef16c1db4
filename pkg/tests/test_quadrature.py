from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from gegenorm import quadrature
from gegenorm.errors import ConvergenceError
from gegenorm.exact import in_exact, jacobi_mass
from gegenorm.params import JacobiParams

weights = st.sampled_from(["-0.5", "-0.2", "0", "0.3", "1.2"])


def beta_moment(a, b, j):
    # ∫ x^j (1-x)^a (1+x)^b dx through the binomial expansion of x = (1+x) - 1
    total = mpf(0)
    for i in range(j + 1):
        total += mp.binomial(j, i) * (-1) ** (j - i) * 2 ** (a + b + i + 1) * mp.beta(a + 1, b + i + 1)
    return total


def test_gegenbauer_eval_matches_mpmath():
    for n in (0, 1, 5, 17):
        assert abs(quadrature.gegenbauer_eval(mpf("0.7"), n, mpf("0.31")) - mp.gegenbauer(n, mpf("0.7"), mpf("0.31"))) < mpf(10) ** -35


@pytest.mark.parametrize("a,b", [(0, 0), ("-0.5", "-0.5"), ("0.3", "1.2"), ("-0.2", "2.1")])
def test_mass(a, b):
    rule = quadrature.build_rule(a, b, 6, 40)
    ref = jacobi_mass(mpf(str(a)), mpf(str(b)))
    assert abs(rule.mass - ref) < abs(ref) * mpf(10) ** -35


@given(weights, weights, st.integers(1, 12))
def test_monomial_moments(a, b, count):
    rule = quadrature.build_rule(a, b, count, 40)
    ar, br = mpf(a), mpf(b)
    for j in range(rule.degree + 1):
        q = mp.fsum(w * x**j for x, w in zip(rule.nodes, rule.weights))
        ref = beta_moment(ar, br, j)
        assert abs(q - ref) < mpf(10) ** -28 * (1 + abs(ref))


def test_nodes_sorted_inside_interval():
    rule = quadrature.build_rule("0.3", "1.2", 9, 40)
    assert all(-1 < x < 1 for x in rule.nodes)
    assert all(w > 0 for w in rule.weights)


def test_orthogonality():
    lam = mpf("0.8")
    rule = quadrature.build_rule(lam - mpf(1) / 2, lam - mpf(1) / 2, 10, 40)
    for m in range(6):
        for n in range(m):
            s = mp.fsum(w * quadrature.gegenbauer_eval(lam, m, x) * quadrature.gegenbauer_eval(lam, n, x)
                        for x, w in zip(rule.nodes, rule.weights))
            assert abs(s) < mpf(10) ** -30


def test_oracle_legendre():
    assert abs(quadrature.in_oracle(JacobiParams(F(1, 2), 0, 0), 3, 40) - mpf(2) / 7) < mpf(10) ** -38


def test_oracle_redundancy():
    p = JacobiParams("0.7", "0.3", "1.2")
    a = quadrature.in_oracle(p, 8, 40)
    b = quadrature.in_oracle(p, 8, 40, redundancy=True)
    assert a == b


def test_oracle_sequence_matches_single():
    p = JacobiParams("1.5", "-0.5", "0.3")
    seq = quadrature.in_oracle_sequence(p, 12, 40)
    for n in (0, 1, 6, 12):
        assert abs(seq[n] - quadrature.in_oracle(p, n, 40)) < abs(seq[n]) * mpf(10) ** -35


@given(st.sampled_from(["0.3", "0.7", "1", "2.5"]), weights, weights, st.integers(0, 30))
def test_oracle_equals_exact(lam, a, b, n):
    p = JacobiParams(lam, a, b)
    x = quadrature.in_oracle(p, n, 40)
    assert abs(x - in_exact(p, n, 40).value) < abs(x) * mpf(10) ** -25


def test_invalid_rules():
    with pytest.raises(ValueError):
        quadrature.build_rule(0, 0, 0)
    with pytest.raises(ValueError):
        quadrature.build_rule(-1, 0, 3)
    with pytest.raises(ValueError):
        quadrature.in_oracle(JacobiParams(1, 0, 0), -1)
    assert issubclass(ConvergenceError, ArithmeticError)
