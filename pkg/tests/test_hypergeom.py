from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from gegenorm import hypergeom
from gegenorm.errors import DomainError, PoleError
from gegenorm.hypergeom import PFqSpec
from gegenorm.quadrature import build_rule, gegenbauer_eval


def test_terminating_binomial():
    # 1F0(-n;;-1) = 2^n
    v, rep = hypergeom.eval_terminating(PFqSpec([-5], [], -1))
    assert v == 32
    assert rep.digits_lost == 0


def test_chu_vandermonde():
    # 2F1(-n, b; c; 1) = (c-b)_n / (c)_n
    b, c = mpf("0.3"), mpf("1.7")
    v, _ = hypergeom.eval_terminating(PFqSpec([-7, b], [c]))
    from gegenorm.numerics import pochhammer
    assert abs(v - pochhammer(c - b, 7) / pochhammer(c, 7)) < mpf(10) ** -35


def test_exact_negative_integer_snaps():
    spec = PFqSpec([Fraction(-3), "0.5"], [2])
    assert spec.terminating_index == 3
    assert PFqSpec([mpf(-4) + mpf(10) ** -30], [1]).terminating_index == 4
    assert PFqSpec([mpf("-4.5")], [1]).terminating_index is None


def test_non_terminating_rejected():
    with pytest.raises(DomainError):
        hypergeom.eval_terminating(PFqSpec([1, 2], [3]))


def test_lower_pole():
    with pytest.raises(PoleError):
        hypergeom.eval_terminating(PFqSpec([-5], [-2]))


@given(st.integers(0, 40), st.floats(min_value=0.1, max_value=5))
def test_pfaff_saalschutz(n, lam):
    # the alternating sum loses up to ~25 digits; callers escalate, so use 60 here
    with mp.workdps(60):
        lam = mpf(lam)
        v, _ = hypergeom.eval_terminating(PFqSpec([-n, n + 2 * lam, lam], [2 * lam, lam + 1]))
        ref = hypergeom.pfaff_saalschutz(n, lam)
    assert abs(v - ref) <= abs(ref) * mpf(10) ** -25


def test_pfaff_saalschutz_against_orthogonality_integral():
    # the 3F2 closed form equals n!/(2λ)_n · λ/(n+λ), the Gegenbauer norm ratio
    lam = mpf("0.8")
    rule = build_rule(lam - mpf(1) / 2, lam - mpf(1) / 2, 12)
    n = 9
    norm = mp.fsum(w * gegenbauer_eval(lam, n, x) ** 2 for x, w in zip(rule.nodes, rule.weights))
    closed = mp.pi * 2 ** (1 - 2 * lam) * mp.gamma(n + 2 * lam) / (mp.factorial(n) * (n + lam) * mp.gamma(lam) ** 2)
    assert abs(norm - closed) < abs(closed) * mpf(10) ** -30


def test_argument_zero():
    assert hypergeom.eval_convergent(PFqSpec([mpf("0.3"), 2], [mpf("1.1")], 0))[0] == 1
    assert hypergeom.eval_terminating(PFqSpec([-4, 2], [3], 0))[0] == 1


def test_convergent_3f2_against_naive_sum():
    spec = PFqSpec([1, 1, mpf("1.5")], [2, 2], mpf("-0.1"))
    v, _ = hypergeom.eval_convergent(spec)
    naive, term = mpf(0), mpf(1)
    for k in range(200):
        naive += term
        term *= (1 + k) * (1 + k) * (mpf("1.5") + k) / ((2 + k) * (2 + k) * (k + 1)) * mpf("-0.1")
    assert abs(v - naive) < mpf(10) ** -38


def test_convergent_matches_mpmath():
    spec = PFqSpec([mpf("0.3"), mpf("0.7")], [mpf("1.9")], mpf("0.6"))
    v, _ = hypergeom.eval_convergent(spec)
    assert abs(v - mp.hyp2f1(mpf("0.3"), mpf("0.7"), mpf("1.9"), mpf("0.6"))) < mpf(10) ** -35


def test_convergent_domain():
    with pytest.raises(DomainError):
        hypergeom.eval_convergent(PFqSpec([1, 1], [2], 1))
    with pytest.raises(DomainError):
        hypergeom.eval_convergent(PFqSpec([1, 1, 1], [2], mpf("0.1")))


def test_pfaff_saalschutz_rejects_negative_n():
    with pytest.raises(ValueError):
        hypergeom.pfaff_saalschutz(-1, 1)
