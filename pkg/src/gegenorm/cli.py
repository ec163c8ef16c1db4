"""Command-line front end: ``gegenorm {compute,table,error-curve,verify}``.

Parameters given as ``p/q`` or as integer literals are exact and may select
special cases; decimal literals are floating and always classify Generic.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 precision budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from mpmath import mp, mpf

from . import asymptotics as asy
from . import exact, genfun, numerics, verify
from .errors import DomainError, GegenNormError, PrecisionExhausted
from .numerics import to_decimal_string
from .params import GegenbauerParams, JacobiParams, is_tagged, parse_value
from .quadrature import in_oracle
from .results import METHODS, EvalResult

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_PRECISION = 0, 1, 2, 3

CSV_HEADER = ["lambda", "alpha", "beta", "mu", "n", "method", "value", "digitsLost", "classification", "error"]
CURVE_HEADER = ["n", "exact", "approx", "relError", "fittedLocalOrder"]
METHOD_CHOICES = ("auto",) + METHODS
DEFAULT_N_LIST = tuple(2**e for e in range(6, 15))


class InputError(Exception):
    """Bad command-line input (exit code 2)."""


def _value(text: str):
    try:
        return parse_value(text)
    except (ValueError, ArithmeticError) as exc:
        raise InputError(f"cannot parse number {text!r}") from exc


def _params(lam, alpha=None, beta=None, mu=None):
    if mu is not None:
        if alpha is not None or beta is not None:
            raise InputError("give either --mu or --alpha/--beta, not both")
        return GegenbauerParams(_value(lam), _value(mu))
    if alpha is None or beta is None:
        raise InputError("need --mu or both --alpha and --beta")
    return JacobiParams(_value(lam), _value(alpha), _value(beta))


def _gegenbauer_view(p):
    if isinstance(p, GegenbauerParams):
        return p
    if p.symmetric:
        return p.as_gegenbauer()
    return None


def _closed_form(p, n, digits):
    g = _gegenbauer_view(p)
    if g is not None and is_tagged(g.lam) and is_tagged(g.mu):
        d = g.lam - g.mu
        if d.denominator == 1 and d >= 1:
            return exact.jn_lambda_minus_k(g.lam, int(d), n, digits)
        if d.denominator == 1 and d <= 0:
            return exact.jn_lambda_plus_k(g.lam, int(-d), n, digits)
    if isinstance(p, JacobiParams) and p.beta_minus_alpha() not in (None, 0):
        return exact.in_via_alpha_beta_connection(p, n, digits)
    raise DomainError("no closed form for these parameters (needs exact lambda-mu or beta-alpha integer)")


def _genfun(p, n, digits):
    g = _gegenbauer_view(p)
    series = (genfun.gen_fn_coefficients_j(g, n, digits) if g is not None
              else genfun.gen_fn_coefficients_i(p, n, digits))
    with mp.workdps(digits + 10):
        value = series.scaled_values(p.lam)[n]
    with mp.workdps(digits):
        value = +value
    return _plain(value, "genfun", p, n, digits)


def _quadrature(p, n, digits):
    j = p.as_jacobi() if isinstance(p, GegenbauerParams) else p
    return _plain(in_oracle(j, n, digits, redundancy=True), "quadrature", p, n, digits)


def _plain(value, method, p, n, digits):
    return EvalResult(value=value, method=method, params=p.to_dict(), n=n, digits=digits,
                      classification=str(p.classify()))


def _need_gegenbauer(p, method):
    g = _gegenbauer_view(p)
    if g is None:
        raise DomainError(f"method {method} needs a Gegenbauer weight (alpha == beta)")
    return g


def evaluate(p, n: int, method: str, digits: int, terms: int = 0) -> EvalResult:
    """Dispatch one evaluation by method name."""
    if n < 0:
        raise InputError("n must be non-negative")
    if method == "auto":
        return asy.exact_value(p, n, digits)
    if method == "exact5F4":
        return exact.in_exact(p.as_jacobi() if isinstance(p, GegenbauerParams) else p, n, digits)
    if method == "exact4F3":
        return exact.jn_exact(_need_gegenbauer(p, method), n, digits)
    if method == "connection":
        return exact.jn_connection(_need_gegenbauer(p, method), n, digits)
    if method == "recurrence":
        g = _need_gegenbauer(p, method)
        return exact.jn_recurrence(g, max(n, 2), digits)[n]
    if method == "genfun":
        return _genfun(p, n, digits)
    if method == "quadrature":
        return _quadrature(p, n, digits)
    if method == "asymptotic":
        return asy.asymptotic_result(p, n, terms, digits)
    if method == "leadingTerm":
        return asy.leading_result(p, n, digits)
    if method == "closedForm":
        return _closed_form(p, n, digits)
    raise InputError(f"unknown method {method!r}")


def _csv_row(params: dict, n, method, value="", lost="", cls="", error=""):
    return [params.get("lambda", ""), params.get("alpha", ""), params.get("beta", ""),
            params.get("mu", ""), n, method, value, lost, cls, error]


def _result_row(r: EvalResult):
    d = r.to_dict()
    return _csv_row(r.params, r.n, d["method"], d["value"], d["diagnostics"]["digitsLost"],
                    d["diagnostics"]["classification"])


def _emit(rows, fmt, out, header=CSV_HEADER):
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(row if isinstance(row, list) else _result_row(row))
    else:
        for row in rows:
            obj = row if isinstance(row, dict) else row.to_dict()
            out.write(json.dumps(obj, ensure_ascii=False) + "\n")


def _split(text):
    if text is None:
        return None
    items = [t.strip() for t in text.split(",") if t.strip()]
    if not items:
        raise InputError("empty list")
    for t in items:
        _value(t)
    return sorted(set(items), key=lambda t: (_value(t), t))


# subcommands


def cmd_compute(args, out):
    p = _params(args.lam, args.alpha, args.beta, args.mu)
    r = evaluate(p, args.n, args.method, args.digits, args.terms)
    _emit([r], args.format, out)
    return EXIT_OK


def cmd_table(args, out):
    lams = _split(args.lambda_list)
    mus = _split(args.mu_list)
    alphas, betas = _split(args.alpha_list), _split(args.beta_list)
    if mus is None and (alphas is None or betas is None):
        raise InputError("need --mu-list or both --alpha-list and --beta-list")
    if mus is not None and (alphas is not None or betas is not None):
        raise InputError("give either --mu-list or --alpha-list/--beta-list")
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in METHOD_CHOICES:
            raise InputError(f"unknown method {m!r}")
    points = ([(lam, None, None, mu) for lam in lams for mu in mus] if mus is not None
              else [(lam, a, b, None) for lam in lams for a in alphas for b in betas])
    rows = []
    for lam, a, b, mu in points:
        try:
            p = _params(lam, a, b, mu)
        except (DomainError, InputError) as exc:
            if not args.keep_going:
                raise
            echo = {"lambda": lam, "alpha": a or "", "beta": b or "", "mu": mu or ""}
            for n in range(args.n_min, args.n_max + 1):
                for m in methods:
                    rows.append(_error_row(echo, n, m, exc, args.format))
            continue
        for n in range(args.n_min, args.n_max + 1):
            for m in methods:
                try:
                    rows.append(evaluate(p, n, m, args.digits, args.terms))
                except (GegenNormError, InputError, ValueError, ArithmeticError) as exc:
                    if not args.keep_going:
                        raise
                    rows.append(_error_row(p.to_dict(), n, m, exc, args.format))
    _emit(rows, args.format, out)
    return EXIT_OK


def _error_row(params, n, method, exc, fmt):
    msg = f"{type(exc).__name__}: {exc}"
    if fmt == "csv":
        return _csv_row(params, n, method, error=msg)
    return {"params": params, "n": n, "method": method, "error": msg}


def error_curve(p, n_list, M, digits, approx="asymptotic"):
    """Rows (n, exact, approx, relError, fittedLocalOrder) for increasing n."""
    ns = sorted(set(n_list))
    errs, rows = [], []
    for n in ns:
        ex = asy.exact_value(p, n, digits).value
        if approx == "leadingTerm":
            ap = asy.leading_result(p, n, digits).value
        else:
            ap, _ = asy.asymptotic_value(p, n, M, digits)
        with mp.workdps(digits):
            err = abs(ap - ex) / abs(ex)
        errs.append(err)
        rows.append([n, ex, ap, err])
    out = []
    for i, (n, ex, ap, err) in enumerate(rows):
        order = None
        if i + 1 < len(rows) and err > 0 and errs[i + 1] > 0:
            order = float(mp.log(err / errs[i + 1]) / mp.log(mpf(ns[i + 1]) / n))
        out.append((n, ex, ap, err, order))
    return out


def cmd_error_curve(args, out):
    p = _params(args.lam, args.alpha, args.beta, args.mu)
    n_list = [int(x) for x in args.n_list.split(",")] if args.n_list else list(DEFAULT_N_LIST)
    if any(n < 2 for n in n_list):
        raise InputError("error curves need n >= 2")
    rows = error_curve(p, n_list, args.terms, args.digits, args.approx)
    d = args.digits
    formatted = []
    for n, ex, ap, err, order in rows:
        formatted.append([n, to_decimal_string(ex, d), to_decimal_string(ap, d),
                          to_decimal_string(err, 6), "" if order is None else f"{order:.6f}"])
    if args.format == "csv":
        _emit(formatted, "csv", out, CURVE_HEADER)
    else:
        _emit([dict(zip(CURVE_HEADER, row)) | {"params": p.to_dict(), "terms": args.terms}
               for row in formatted], "json", out)
    return EXIT_OK


def cmd_verify(args, out):
    ok = verify.run_suite(args.suite, out=lambda line: out.write(line + "\n"))
    return EXIT_OK if ok else EXIT_FAIL


def _add_params(sp):
    sp.add_argument("--lambda", dest="lam", required=True, help="λ > 0 (p/q for an exact value)")
    sp.add_argument("--alpha", help="α > -1 (Jacobi weight)")
    sp.add_argument("--beta", help="β > -1 (Jacobi weight)")
    sp.add_argument("--mu", help="μ > -1/2 (Gegenbauer weight)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gegenorm",
        description="Weighted L2 norms of Gegenbauer polynomials: exact, oracle and asymptotic routes.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=None,
                        help=f"significant digits (default ${numerics.DIGITS_ENV} or 40)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--terms", type=int, default=0, help="truncation index M of asymptotic series")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="evaluate one integral")
    _add_params(c)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--method", choices=METHOD_CHOICES, default="auto")
    c.set_defaults(func=cmd_compute)

    t = sub.add_parser("table", parents=[common], help="evaluate a parameter grid")
    t.add_argument("--lambda-list", required=True, help="comma-separated λ values")
    t.add_argument("--alpha-list")
    t.add_argument("--beta-list")
    t.add_argument("--mu-list")
    t.add_argument("--n-min", type=int, default=1)
    t.add_argument("--n-max", type=int, required=True)
    t.add_argument("--methods", default="auto", help="comma-separated methods")
    t.add_argument("--keep-going", action="store_true", help="record errors per row instead of aborting")
    t.set_defaults(func=cmd_table)

    e = sub.add_parser("error-curve", parents=[common], help="truncation error of asymptotics versus n")
    _add_params(e)
    e.add_argument("--n-list", help="comma-separated n values (default 64,128,...,16384)")
    e.add_argument("--approx", choices=("asymptotic", "leadingTerm"), default="asymptotic")
    e.set_defaults(func=cmd_error_curve)

    v = sub.add_parser("verify", help="run property suites")
    v.add_argument("--suite", choices=verify.SUITE_NAMES, default="all")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "digits", None) is None:
        args.digits = numerics.get_default_digits()
    elif args.digits < 15:
        parser.error("--digits must be at least 15")
    if getattr(args, "terms", 0) < 0:
        parser.error("--terms must be non-negative")
    try:
        with mp.workdps(args.digits):
            return args.func(args, out)
    except PrecisionExhausted as exc:
        print(f"gegenorm: precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (InputError, DomainError, ValueError, TypeError, ArithmeticError, GegenNormError) as exc:
        print(f"gegenorm: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
