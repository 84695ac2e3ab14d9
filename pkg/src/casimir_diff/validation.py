"""Closed-form limits used to check the Lifshitz engine."""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass, replace
from typing import Callable

from .constants import C, HBAR, KB, ZETA3
from .errors import ConfigurationError, ConvergenceError
from .lifshitz import GapConfiguration, QuadratureSpec, ThermalSpec, evaluate, thermal_length
from .materials import DRUDE, GOLD, PLASMA, Plasma, check_prescription
from .strata import LayerStack


def ideal_mirror_pressure(a: float) -> float:
    """Magnitude pi^2 hbar c / (240 a^4) of the T = 0 perfect-mirror pressure (Pa)."""
    if not a > 0.0:
        raise ConfigurationError("separation must be > 0")
    return math.pi**2 * HBAR * C / (240.0 * a**4)


def classical_limit_pressure(a: float, temperature: float, prescription: str = DRUDE) -> float:
    """Magnitude of the large-separation pressure between metal half-spaces (Pa)."""
    if not (a > 0.0 and temperature > 0.0):
        raise ConfigurationError("separation and temperature must be > 0")
    value = ZETA3 * KB * temperature / (8.0 * math.pi * a**3)
    return 2.0 * value if check_prescription(prescription) == PLASMA else value


def classical_limit_gradient(a: float, temperature: float, prescription: str = DRUDE) -> float:
    return 3.0 * classical_limit_pressure(a, temperature, prescription) / a


@dataclass(frozen=True)
class LimitCase:
    name: str
    oracle: Callable[[], float]
    compute: Callable[[QuadratureSpec, dict], float]
    tolerance: float

    def __post_init__(self):
        if not self.tolerance > 0.0:
            raise ConfigurationError("tolerance must be > 0")


@dataclass
class LimitReport:
    name: str
    computed: float
    oracle: float
    deviation: float
    tolerance: float
    passed: bool
    seconds: float
    message: str = ""


def _thermal(temperature, prescription, overrides):
    return replace(ThermalSpec(temperature, prescription), **(overrides or {}))


def _ideal_mirror(a=1e-6):
    # plasma length and thermal length both 10^3 or more away from a
    wp = 1e4 * C / a
    temperature = HBAR * C / (2.0 * math.pi * KB * 2e3 * a)
    mirror = LayerStack(Plasma(wp))

    def compute(quad, overrides):
        gap = GapConfiguration(mirror, mirror, a)
        return -evaluate(gap, _thermal(temperature, PLASMA, overrides), quad, (1,)).pressure

    return LimitCase(f"ideal_mirror_pressure_a={a * 1e6:g}um", lambda: ideal_mirror_pressure(a), compute, 5e-3)


def _classical(prescription, a=10e-6, temperature=300.0, tol=None, gradient=False):
    gold = LayerStack(GOLD)

    def compute(quad, overrides):
        res = evaluate(GapConfiguration(gold, gold, a), _thermal(temperature, prescription, overrides), quad)
        return res.pressure_gradient if gradient else -res.pressure

    if gradient:
        return LimitCase(f"classical_gradient_{prescription}_a={a * 1e6:g}um",
                         lambda: classical_limit_gradient(a, temperature, prescription), compute, tol)
    return LimitCase(f"classical_pressure_{prescription}_a={a * 1e6:g}um",
                     lambda: classical_limit_pressure(a, temperature, prescription), compute, tol)


def _thermal_length_case():
    return LimitCase("thermal_length_300K", lambda: 1.2e-6, lambda quad, overrides: thermal_length(300.0), 0.02)


def limit_cases() -> list[LimitCase]:
    return [
        _ideal_mirror(),
        _classical(DRUDE, tol=0.02),
        _classical(PLASMA, tol=0.05),
        _classical(DRUDE, a=10 * thermal_length(300.0), tol=0.02),
        _classical(DRUDE, tol=0.03, gradient=True),
        _thermal_length_case(),
    ]


def run_limit_suite(quad: QuadratureSpec | None = None, thermal_overrides: dict | None = None,
                    tol_scale: float = 1.0, cases: list[LimitCase] | None = None) -> list[LimitReport]:
    """Run every limit case; failures are collected rather than raised."""
    quad = quad or QuadratureSpec()
    reports = []
    for case in cases or limit_cases():
        tol = case.tolerance * tol_scale
        oracle = case.oracle()
        start = time.perf_counter()
        try:
            value = case.compute(quad, thermal_overrides)
        except (ConvergenceError, ConfigurationError) as exc:
            reports.append(LimitReport(case.name, math.nan, oracle, math.nan, tol, False,
                                       time.perf_counter() - start, str(exc)))
            continue
        dev = abs(value - oracle) / abs(oracle)
        reports.append(LimitReport(case.name, value, oracle, dev, tol, dev <= tol, time.perf_counter() - start))
    return reports


def format_table(reports: list[LimitReport]) -> str:
    header = ("case", "computed", "oracle", "rel_dev", "tol", "result")
    rows = [header] + [
        (r.name, f"{r.computed:.6e}", f"{r.oracle:.6e}", f"{r.deviation:.2e}", f"{r.tolerance:.1e}",
         "PASS" if r.passed else "FAIL" + (f" ({r.message})" if r.message else ""))
        for r in reports
    ]
    widths = [max(len(row[i]) for row in rows) for i in range(len(header) - 1)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row[:-1], widths)) + "  " + row[-1] for row in rows]
    return "\n".join(lines)


def format_csv(reports: list[LimitReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["case", "computed", "oracle", "rel_deviation", "tolerance", "passed"])
    for r in reports:
        writer.writerow([r.name, repr(r.computed), repr(r.oracle), repr(r.deviation), repr(r.tolerance),
                         int(r.passed)])
    return buf.getvalue()
