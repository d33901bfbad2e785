"""Verification reports: the state integral against both factorized forms."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import mpmath as mp

from .arith import DEFAULT_PRECISION, make_modular_pair
from .expr import parse_complex
from .qfactor import factorized_sum, theorem_value
from .state_integral import IntegralSpec, evaluate

SCHEMA_VERSION = 1
DEFAULT_TOL = "1e-25"
DEFAULT_ORDER = 16

_PAIRS = (("integral", "factorized"), ("integral", "theorem"), ("factorized", "theorem"))


def format_real(x, digits: int) -> str:
    return mp.nstr(mp.mpf(x), digits, strip_zeros=False)


def format_complex(z, digits: int) -> str:
    """'re + im*i' in a form :func:`parse_complex` reads back."""
    z = mp.mpc(z)
    im = format_real(abs(z.imag), digits)
    sign = "-" if z.imag < 0 else "+"
    return f"{format_real(z.real, digits)} {sign} {im}*i"


def _value_entry(z, digits: int, **extra) -> dict:
    z = mp.mpc(z)
    out = {"re": format_real(z.real, digits), "im": format_real(z.imag, digits), "digits": digits}
    out.update({k: format_real(v, 6) for k, v in extra.items()})
    return out


@dataclass
class VerificationReport:
    parameters: dict
    values: dict = field(default_factory=dict)
    discrepancies: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)
    timings_ms: dict | None = None

    @property
    def passed(self) -> bool:
        return not self.errors and bool(self.checks) and all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "parameters": self.parameters,
            "values": self.values,
            "discrepancies": self.discrepancies,
            "checks": self.checks,
            "errors": self.errors,
            "pass": self.passed,
            "timings_ms": self.timings_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def run_verify(
    A: int,
    B: int,
    b: str,
    precision: int = DEFAULT_PRECISION,
    tol: str = DEFAULT_TOL,
    epsilon: str | None = None,
    tilt: str | None = None,
    timings: bool = False,
) -> VerificationReport:
    """Compute the three values and compare them pairwise (relative discrepancy < tol).

    Raises ValueError for precondition failures; stage failures are recorded
    in the report instead.
    """
    if not B > A > 0:
        raise ValueError(f"B > A > 0 violated for (A, B) = ({A}, {B})")
    with mp.workdps(precision):
        pair = make_modular_pair(parse_complex(b, precision), precision)
        tol_v = mp.mpf(tol)
        eps_v = parse_complex(epsilon, precision, {"cb": pair.cb}).real if epsilon else None
        tilt_v = parse_complex(tilt, precision).real if tilt else None
        spec = IntegralSpec(A, B, pair, epsilon=eps_v, tilt=tilt_v)
        report = VerificationReport(
            parameters={
                "A": A,
                "B": B,
                "b": b,
                "b_value": _value_entry(pair.b, precision),
                "precision": precision,
                "tol": tol,
                "quadrature_tol": format_real(spec.target_tol, 6),
                "epsilon": format_real(spec.epsilon, precision),
                "tilt": format_real(spec.tilt, precision),
            },
            timings_ms={} if timings else None,
        )
        results = {}
        stages = {
            "integral": lambda: evaluate(spec),
            "factorized": lambda: factorized_sum(A, B, pair),
            "theorem": lambda: theorem_value(A, B, pair),
        }
        for name, fn in stages.items():
            t0 = time.perf_counter()
            try:
                out = fn()
            except Exception as exc:  # recorded per stage, reported as a failure
                report.errors[name] = f"{type(exc).__name__}: {exc}"
                continue
            finally:
                if timings:
                    report.timings_ms[name] = round((time.perf_counter() - t0) * 1000, 1)
            if name == "integral":
                results[name] = out.value
                report.values[name] = _value_entry(out.value, precision, error_estimate=out.error_estimate)
            elif name == "factorized":
                value, tail, diagonals = out
                results[name] = value
                report.values[name] = _value_entry(value, precision, tail_estimate=tail)
                report.parameters["factorized_diagonals"] = diagonals
            else:
                results[name] = out
                report.values[name] = _value_entry(out, precision)
        for a, c in _PAIRS:
            if a in results and c in results:
                diff = abs(results[a] - results[c])
                rel = diff / abs(results[a])
                key = f"{a}_vs_{c}"
                report.discrepancies[key] = {"absolute": format_real(diff, 6), "relative": format_real(rel, 6)}
                report.checks[key] = bool(rel < tol_v)
        return report


def run_point(point: dict) -> dict:
    """Suite worker: one config entry {A, B, b, overrides} -> report dict."""
    overrides = dict(point.get("overrides", {}))
    try:
        rep = run_verify(int(point["A"]), int(point["B"]), str(point["b"]), **overrides)
    except Exception as exc:
        return {
            "schema_version": SCHEMA_VERSION,
            "parameters": {"A": point.get("A"), "B": point.get("B"), "b": point.get("b"), **overrides},
            "errors": {"precondition": f"{type(exc).__name__}: {exc}"},
            "pass": False,
        }
    return rep.to_dict()


DEFAULT_GRID = [
    {"A": A, "B": B, "b": b}
    for A, B in ((1, 2), (2, 3), (1, 3), (3, 4))
    for b in ("exp(i*pi/4)", "exp(i*pi/3)", "1.1*exp(i*pi/5)")
]
