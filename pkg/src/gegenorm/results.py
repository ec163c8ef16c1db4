"""Evaluation records shared by the library and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from .numerics import CancellationReport, to_decimal_string

METHODS = (
    "exact5F4",
    "exact4F3",
    "connection",
    "recurrence",
    "genfun",
    "quadrature",
    "asymptotic",
    "leadingTerm",
    "closedForm",
)


@dataclass(frozen=True)
class EvalResult:
    """A value together with how it was obtained.

    ``value`` is an mpf rounded to ``digits`` significant digits; ``method``
    is one of :data:`METHODS` (asymptotic results also record ``terms``).
    """

    value: mpmath.mpf
    method: str
    params: dict
    n: int
    digits: int
    report: CancellationReport | None = None
    classification: str = "Generic"
    working_digits: int | None = None
    terms: int | None = None
    error_estimate: mpmath.mpf | None = None
    eta: tuple | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")

    @property
    def method_label(self) -> str:
        return f"asymptotic({self.terms})" if self.method == "asymptotic" else self.method

    @property
    def digits_lost(self) -> float:
        return 0.0 if self.report is None else self.report.digits_lost

    def value_string(self) -> str:
        return to_decimal_string(self.value, self.digits)

    def to_dict(self) -> dict:
        diagnostics = {
            "digitsLost": round(self.digits_lost, 3),
            "classification": self.classification,
        }
        if self.eta is not None:
            diagnostics["etaExponents"] = [
                {"exponent": to_decimal_string(e, 17), "logPower": lp} for e, lp in self.eta
            ]
        if self.error_estimate is not None:
            diagnostics["errorEstimate"] = to_decimal_string(self.error_estimate, 6)
        if self.working_digits is not None:
            diagnostics["workingDigits"] = self.working_digits
        return {
            "params": self.params,
            "n": self.n,
            "method": self.method_label,
            "value": self.value_string(),
            "diagnostics": diagnostics,
        }

    def __float__(self):
        return float(self.value)
