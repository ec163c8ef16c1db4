"""Named property suites run by ``gegenorm verify``.

Each check returns ``(passed, detail)``; a suite is a list of named checks.
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction as F

from mpmath import mp, mpf

from . import asymptotics as asy
from . import exact, genfun, hypergeom
from .params import GegenbauerParams, JacobiParams
from .quadrature import in_oracle_sequence

DIGITS = 40

GEGEN_LAMBDAS = ("0.3", "0.7", "1.2", "2.5")
GEGEN_MUS = ("-0.2", "0.4", "1.0", "2.3")
ORACLE_LAMBDAS = ("0.3", "0.7", "1", "1.5", "2.5")
ORACLE_AB = ("-0.5", "0", "0.3", "1.2")
GENERIC_JACOBI = (
    ("0.7", "0.3", "1.2"),
    ("0.3", "-0.5", "0.4"),
    ("1.3", "0.2", "-0.3"),
    ("2.2", "1.1", "0.45"),
    ("0.45", "-0.15", "2.6"),
)


def _rel(a, b):
    return abs(a - b) / abs(b)


def _fmt(x):
    return mp.nstr(mpf(x), 3)


def _worst(pairs):
    worst = mpf(0)
    for a, b in pairs:
        worst = max(worst, _rel(a, b))
    return worst


def _bound(worst, tol):
    return worst <= tol, f"max rel diff {_fmt(worst)} (tol {_fmt(tol)})"


# identities


def check_pfaff_saalschutz():
    worst = mpf(0)
    for lam in ("0.3", "0.7", "1.0", "2.5"):
        lr = mpf(lam)
        for n in range(41):
            spec = hypergeom.PFqSpec([-n, n + 2 * lr, lr], [2 * lr, lr + 1])
            with mp.workdps(60):
                v, _ = hypergeom.eval_terminating(spec)
                worst = max(worst, _rel(v, hypergeom.pfaff_saalschutz(n, lr)))
    return _bound(worst, mpf(10) ** -25)


def check_two_formula_identity():
    worst = mpf(0)
    for lam in GEGEN_LAMBDAS:
        for mu in GEGEN_MUS:
            g = GegenbauerParams(lam, mu)
            for n in range(41):
                a = exact.jn_exact(g, n, DIGITS).value
                b = exact.jn_connection(g, n, DIGITS).value
                worst = max(worst, _rel(a, b))
    return _bound(worst, mpf(10) ** -25)


def check_alpha_beta_symmetry():
    worst = mpf(0)
    for lam, a, b in GENERIC_JACOBI:
        for n in range(0, 31, 3):
            x = exact.in_exact(JacobiParams(lam, a, b), n, DIGITS).value
            y = exact.in_exact(JacobiParams(lam, b, a), n, DIGITS).value
            worst = max(worst, _rel(x, y))
    return _bound(worst, mpf(10) ** -30)


def check_shifted_weight_identity():
    worst = mpf(0)
    for lam in GEGEN_LAMBDAS:
        for mu in ("0.4", "1.0", "2.3"):
            m = F(mu)
            for n in range(0, 21, 4):
                x = exact.in_exact(JacobiParams(lam, m + F(1, 2), m - F(1, 2)), n, DIGITS).value
                y = exact.jn_exact(GegenbauerParams(lam, m), n, DIGITS).value
                worst = max(worst, _rel(x, y))
    return _bound(worst, mpf(10) ** -30)


def check_b_coefficients():
    for m in range(9):
        for eta in (0, 1):
            for ell in range(m + 1):
                if exact.b_coefficient(m, eta, ell) != exact.b_coefficient_sum(m, eta, ell):
                    return False, f"mismatch at m={m}, eta={eta}, ell={ell}"
    return True, "closed form equals the double sum for m <= 8"


def check_alpha_beta_connection():
    worst = mpf(0)
    for k in range(1, 6):
        for lam in (F(3, 5), F(13, 10)):
            for a in (F(-1, 5), F(2, 5)):
                p = JacobiParams(lam, a, a + k)
                for n in range(21):
                    x = exact.in_via_alpha_beta_connection(p, n, DIGITS).value
                    y = exact.in_exact(p, n, DIGITS).value
                    worst = max(worst, _rel(x, y))
    return _bound(worst, mpf(10) ** -22)


def check_lambda_rho_connection():
    worst = mpf(0)
    for lam, rho, a, b in (("1", "0.5", "0", "0"), ("0.8", "0.8", "0.3", "1.2"), ("1.7", "0.6", "-0.4", "0.9")):
        p = JacobiParams(lam, a, b)
        q = JacobiParams(rho, a, b)
        inner = in_oracle_sequence(q, 10, DIGITS + 10)
        for n in range(11):
            x = exact.in_via_lambda_rho_connection(p, rho, n, lambda k: inner[k], DIGITS).value
            worst = max(worst, _rel(x, exact.in_exact(p, n, DIGITS).value))
    return _bound(worst, mpf(10) ** -25)


# oracle


def check_oracle_grid():
    worst = mpf(0)
    for lam in ORACLE_LAMBDAS:
        for a in ORACLE_AB:
            for b in ORACLE_AB:
                p = JacobiParams(lam, a, b)
                orc = in_oracle_sequence(p, 60, DIGITS)
                for n in range(61):
                    with mp.workdps(DIGITS):
                        worst = max(worst, _rel(exact.in_exact(p, n, DIGITS).value, orc[n]))
    return _bound(worst, mpf(10) ** -25)


def check_closed_forms():
    worst = mpf(0)
    leg = JacobiParams(F(1, 2), 0, 0)
    cheb = GegenbauerParams(1, 1)
    for n in range(101):
        worst = max(worst, _rel(exact.in_exact(leg, n, DIGITS).value, mpf(2) / (2 * n + 1)))
        worst = max(worst, _rel(exact.jn_exact(cheb, n, DIGITS).value, mp.pi / 2))
    return _bound(worst, mpf(10) ** -30)


# recurrence


def check_recurrence_residual():
    worst = mpf(0)
    for lam in GEGEN_LAMBDAS:
        for mu in GEGEN_MUS:
            g = GegenbauerParams(lam, mu)
            vals = [exact.jn_exact(g, n, DIGITS).value for n in range(53)]
            with mp.workdps(DIGITS):
                for n in range(51):
                    worst = max(worst, exact.recurrence_residual(g, n, *vals[n : n + 3]))
    return _bound(worst, mpf(10) ** -20)


def check_forward_recurrence():
    worst = mpf(0)
    for lam, mu in (("0.7", "0.2"), ("1.2", "2.3"), ("2.5", "-0.2")):
        g = GegenbauerParams(lam, mu)
        for r in exact.jn_recurrence(g, 50, DIGITS):
            ref = exact.jn_exact(g, r.n, DIGITS).value
            if abs(r.value - ref) > 2 * r.error_estimate + abs(ref) * mpf(10) ** (1 - DIGITS):
                return False, f"n={r.n}: error exceeds its interval estimate"
            worst = max(worst, _rel(r.value, ref))
    return True, f"within interval estimates, max rel diff {_fmt(worst)}"


# asymptotics


def _fitted_order(errs, ns):
    return math.log(float(errs[0] / errs[1])) / math.log(ns[1] / ns[0])


def check_gegen_generic_leading():
    g = GegenbauerParams("0.7", "1.3")
    worst = 0.0
    for e in range(10, 15):
        n = 2**e
        lt = asy.gegen_leading_term(g, n)
        dev = float(abs(exact.evaluate_j(g, n, DIGITS).value / lt.value - 1)) * n
        worst = max(worst, dev)
    return worst <= 5, f"max n·|J_n/lead - 1| = {worst:.3f} (bound 5)"


def check_lambda_minus_mu_one_leading():
    g = GegenbauerParams(1, 0)
    worst = mpf(0)
    for n in (2**8, 2**10, 2**12):
        lt = asy.gegen_leading_term(g, n)
        ex = exact.jn_lambda_minus_k(1, 1, n, DIGITS).value
        worst = max(worst, abs((ex - lt.value) / lt.value - mpf(1) / n))
    return _bound(worst, mpf(10) ** -30)


def check_gegen_log_case():
    g = GegenbauerParams(1, F(1, 2))
    n = 2**12
    lt = asy.gegen_leading_term(g, n)
    res = abs(exact.evaluate_j(g, n, DIGITS).value - lt.value)
    bound = 10 * mp.log(n) / n
    return res <= bound, f"|J_n - lead| = {_fmt(res)} (bound {_fmt(bound)}), case {lt.case}"


def check_jacobi_log_case():
    p = JacobiParams(1, 0, "0.5")
    n = 2**10
    lt = asy.jacobi_leading_term(p, n)
    res = abs(exact.in_exact(p, n, DIGITS).value - lt.value)
    bound = 10 * mp.log(n) / n
    return res <= bound and lt.case == "alpha=lambda-1", f"|I_n - lead| = {_fmt(res)} (bound {_fmt(bound)})"


def series_improvement(p=None, n=2**12, M=3):
    """Observed and predicted error reduction when M grows from 0 to ``M``."""
    p = p or JacobiParams("0.7", "0.3", "1.2")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ex = exact.in_exact(p, n, DIGITS).value
        v0, _ = asy.in_asymptotic(p, n, 0, DIGITS)
        vM, _ = asy.in_asymptotic(p, n, M, DIGITS)
        _, full = asy.in_asymptotic(p, n, M + 1, DIGITS)
    with mp.workdps(DIGITS):
        observed = abs(v0 - ex) / abs(vM - ex)
    omitted0 = [t for t in full.terms if t.index == 1]
    omittedM = [t for t in full.terms if t.index == M + 1]
    lead0 = max(omitted0, key=lambda t: t.n_exponent)
    leadM = max(omittedM, key=lambda t: t.n_exponent)
    gap = lead0.n_exponent - leadM.n_exponent
    predicted = abs(lead0.value / leadM.value)
    return observed, predicted, gap


def check_series_improvement():
    observed, predicted, gap = series_improvement()
    ok = observed >= predicted / 4
    return ok, (f"observed reduction {_fmt(observed)}, predicted {_fmt(predicted)} "
                f"(exponent gap {_fmt(gap)})")


def check_lambda_plus_k_constant():
    worst = mpf(0)
    for k in range(7):
        for lam in (F(2, 5), F(17, 10)):
            a = asy.gegen_leading_term(GegenbauerParams(lam, lam + k), 2).constant
            b = asy.jn_lambda_plus_k_leading(lam, k, 2).constant
            worst = max(worst, _rel(a, b))
    return _bound(worst, mpf(10) ** -25)


def nat_lambda_order(k=2, mu="0.3", M=2, ns=(2**11, 2**12)):
    g = GegenbauerParams(k, mu)
    errs = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for n in ns:
            approx, exp = asy.jn_nat_lambda_asymptotic(k, mu, n, M, DIGITS)
            errs.append(abs(approx - exact.evaluate_j(g, n, DIGITS).value))
        _, full = asy.jn_nat_lambda_asymptotic(k, mu, ns[-1], M + 1, DIGITS)
    omitted = max((t for t in full.terms if t.index == M + 1), key=lambda t: t.n_exponent)
    fitted = -_fitted_order(errs, ns)
    return fitted, float(omitted.n_exponent)


def check_nat_lambda_series():
    fitted, predicted = nat_lambda_order()
    return abs(fitted - predicted) <= 0.25, f"fitted exponent {fitted:.4f}, first omitted term n^{predicted:.4f}"


def check_jacobi_symmetry_coefficients():
    worst = mpf(0)
    for lam, a, b in GENERIC_JACOBI:
        p, q = JacobiParams(lam, a, b), JacobiParams(lam, b, a)
        for m in range(7):
            worst = max(worst, abs(asy.jacobi_coefficient_a(p, m) - asy.jacobi_coefficient_b(q, m)))
    return worst == 0, f"max |A_m(α,β) - B_m(β,α)| = {_fmt(worst)}"


# special cases


def check_lambda_minus_k_one():
    worst = mpf(0)
    for n in range(51):
        worst = max(worst, _rel(exact.jn_lambda_minus_k(1, 1, n, DIGITS).value, (n + 1) * mp.pi))
    series = genfun.gen_fn_coefficients_j(GegenbauerParams(1, 0), 30, DIGITS)
    num, expo = genfun.gen_fn_rational_form(1, 1, DIGITS)
    flat = max(_rel(c, mp.pi) for c in series.coefficients)
    ok = worst <= mpf(10) ** -30 and flat <= mpf(10) ** -30 and expo == 1 and _rel(num[0], mp.pi) < mpf(10) ** -30
    return ok, f"(n+1)π max rel diff {_fmt(worst)}; series coefficients vs π {_fmt(flat)}"


def check_lambda_plus_k():
    worst = mpf(0)
    for lam in (F(1, 2), F(4, 5), F(17, 10)):
        for k in range(4):
            g = GegenbauerParams(lam, lam + k)
            for n in range(0, 21, 3):
                worst = max(worst, _rel(exact.jn_lambda_plus_k(lam, k, n, DIGITS).value,
                                        exact.jn_exact(g, n, DIGITS).value))
    return _bound(worst, mpf(10) ** -25)


def check_lambda_minus_k_general():
    worst = mpf(0)
    for lam, k in ((F(5, 2), 1), (F(5, 2), 2), (F(33, 10), 3), (F(7, 10), 1)):
        g = GegenbauerParams(lam, lam - k)
        for n in range(0, 25, 4):
            worst = max(worst, _rel(exact.jn_lambda_minus_k(lam, k, n, DIGITS).value,
                                    exact.jn_exact(g, n, DIGITS).value))
    return _bound(worst, mpf(10) ** -25)


def check_rational_form():
    worst = mpf(0)
    for lam, k in ((F(5, 2), 2), (F(33, 10), 3), (F(9, 2), 4)):
        num, expo = genfun.gen_fn_rational_form(lam, k, DIGITS)
        with mp.workdps(DIGITS):
            worst = max(worst, max(genfun.pn_recurrence_residuals(lam, k, num)))
        a = genfun.rational_form_series(num, expo, 15)
        b = genfun.gen_fn_coefficients_j(GegenbauerParams(lam, lam - k), 15, DIGITS)
        worst = max(worst, _worst(zip(a.coefficients, b.coefficients)))
    return _bound(worst, mpf(10) ** -30)


def check_genfun_route():
    worst = mpf(0)
    for lam, a, b in GENERIC_JACOBI:
        p = JacobiParams(lam, a, b)
        vals = genfun.gen_fn_coefficients_i(p, 30, DIGITS).scaled_values(p.lam)
        for n in range(31):
            worst = max(worst, _rel(vals[n], exact.in_exact(p, n, DIGITS).value))
    return _bound(worst, mpf(10) ** -22)


SUITES = {
    "identities": [
        ("Pfaff-Saalschutz 3F2", check_pfaff_saalschutz),
        ("J_n: 4F3 = connection sum", check_two_formula_identity),
        ("I_n alpha<->beta symmetry", check_alpha_beta_symmetry),
        ("I_n(mu+1/2, mu-1/2) = J_n(mu)", check_shifted_weight_identity),
        ("b_l closed form = double sum", check_b_coefficients),
        ("alpha-beta connection = 5F4", check_alpha_beta_connection),
        ("lambda-rho connection = 5F4", check_lambda_rho_connection),
    ],
    "oracle": [
        ("5F4 = Gauss-Jacobi oracle", check_oracle_grid),
        ("Legendre and Chebyshev-U closed forms", check_closed_forms),
    ],
    "recurrence": [
        ("three-term recurrence residual", check_recurrence_residual),
        ("forward recurrence within its error estimate", check_forward_recurrence),
    ],
    "asymptotics": [
        ("generic Gegenbauer leading term", check_gegen_generic_leading),
        ("lambda=1, mu=0 leading term", check_lambda_minus_mu_one_leading),
        ("mu = lambda - 1/2 log case", check_gegen_log_case),
        ("alpha = lambda - 1 log case", check_jacobi_log_case),
        ("M = 0 -> 3 error reduction", check_series_improvement),
        ("mu = lambda + k leading constant", check_lambda_plus_k_constant),
        ("integer lambda series order", check_nat_lambda_series),
        ("A_m(alpha,beta) = B_m(beta,alpha)", check_jacobi_symmetry_coefficients),
    ],
    "special-cases": [
        ("lambda=1, mu=0 closed form", check_lambda_minus_k_one),
        ("mu = lambda + k finite sum", check_lambda_plus_k),
        ("mu = lambda - k closed form", check_lambda_minus_k_general),
        ("rational generating function", check_rational_form),
        ("generating-function route", check_genfun_route),
    ],
}
SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suite(name, out=print):
    """Run a suite by name, printing one line per check; returns True iff all pass."""
    if name == "all":
        return all([run_suite(s, out) for s in SUITES])
    ok_all = True
    for label, check in SUITES[name]:
        with mp.workdps(DIGITS):
            try:
                ok, detail = check()
            except Exception as exc:  # a crash is a failure, reported not raised
                ok, detail = False, f"{type(exc).__name__}: {exc}"
        out(f"{'PASS' if ok else 'FAIL'} [{name}] {label}: {detail}")
        ok_all &= bool(ok)
    return ok_all
