"""Command line interface.

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or
precondition error.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

import mpmath as mp

from .arith import DEFAULT_PRECISION, ModularPairError, make_modular_pair
from .expr import ExpressionError, parse_complex
from .faddeev import PoleProximityError, phi_b
from .qdifference import check_linear_qdiff, check_reflection, nahm_puiseux, omega_nonlinear_check
from .qfactor import factorized_value, theorem_value
from .report import DEFAULT_GRID, DEFAULT_ORDER, DEFAULT_TOL, SCHEMA_VERSION, format_complex, format_real, run_point, run_verify
from .ring import compute_PAB
from .state_integral import ContourError, IntegralSpec, evaluate

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _pair(args):
    return make_modular_pair(parse_complex(args.b, args.precision), args.precision)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        Path(args.json).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(text)


def _check_ab(A: int, B: int) -> None:
    if not B > A > 0:
        raise UsageError(f"B > A > 0 violated for (A, B) = ({A}, {B})")


def cmd_phi(args) -> int:
    pair = _pair(args)
    with mp.workdps(args.precision):
        x = parse_complex(args.x, args.precision, {"cb": pair.cb})
        value = phi_b(x, pair)
    text = format_complex(value, args.precision)
    _emit(args, {"schema_version": SCHEMA_VERSION, "phi": text, "precision": args.precision}, text)
    return EXIT_PASS


def cmd_integral(args) -> int:
    _check_ab(args.A, args.B)
    pair = _pair(args)
    with mp.workdps(args.precision):
        eps = parse_complex(args.epsilon, args.precision, {"cb": pair.cb}).real if args.epsilon else None
        tilt = parse_complex(args.tilt, args.precision).real if args.tilt else None
        tol = mp.mpf(args.quad_tol) if args.quad_tol else None
        res = evaluate(IntegralSpec(args.A, args.B, pair, epsilon=eps, target_tol=tol, tilt=tilt))
    text = f"{format_complex(res.value, args.precision)}  (error estimate {format_real(res.error_estimate, 3)})"
    payload = {
        "schema_version": SCHEMA_VERSION,
        "value": format_complex(res.value, args.precision),
        "error_estimate": format_real(res.error_estimate, 6),
        "precision": args.precision,
    }
    _emit(args, payload, text)
    return EXIT_PASS


def cmd_factorize(args) -> int:
    _check_ab(args.A, args.B)
    pair = _pair(args)
    with mp.workdps(args.precision):
        f = factorized_value(args.A, args.B, pair)
        t = theorem_value(args.A, args.B, pair)
        rel = abs(f - t) / abs(f)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "factorized": format_complex(f, args.precision),
        "theorem": format_complex(t, args.precision),
        "relative_discrepancy": format_real(rel, 6),
        "precision": args.precision,
    }
    _emit(args, payload, f"factorized {payload['factorized']}\ntheorem    {payload['theorem']}")
    return EXIT_PASS if rel < mp.mpf(args.tol) else EXIT_FAIL


def cmd_pab(args) -> int:
    _check_ab(args.A, args.B)
    text = compute_PAB(args.A, args.B).to_text()
    _emit(args, {"schema_version": SCHEMA_VERSION, "A": args.A, "B": args.B, "P": text}, text)
    return EXIT_PASS


def cmd_verify(args) -> int:
    _check_ab(args.A, args.B)
    try:
        report = run_verify(args.A, args.B, args.b, args.precision, args.tol, args.epsilon, args.tilt, args.timings)
    except (ContourError, ModularPairError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    text = report.to_json()
    if args.json:
        Path(args.json).write_text(text)
    sys.stdout.write(text)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_qdiff(args) -> int:
    _check_ab(args.A, args.B)
    with mp.workdps(args.precision):
        q = parse_complex(args.q, args.precision)
        tol = mp.mpf(10) ** -(args.precision - 10)
        lin = check_linear_qdiff(args.A, args.B, q, args.order)
        om = omega_nonlinear_check(args.A, args.B, q, args.order)
    refl = check_reflection(args.A, args.B, Fraction(args.q0), args.order)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "linear_residual": format_real(lin, 6),
        "omega_residual": format_real(om, 6),
        "reflection_exact": refl,
        "order": args.order,
        "precision": args.precision,
    }
    ok = lin < tol and om < tol and refl
    _emit(args, payload, json.dumps(payload, indent=2, sort_keys=True))
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_nahm(args) -> int:
    _check_ab(args.A, args.B)
    rep = nahm_puiseux(args.A, args.B, args.order)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "A": rep.A,
        "B": rep.B,
        "order": rep.order,
        "u_coefficients": [str(c) for c in rep.u_coefficients],
        "branch_angles_over_pi": [str(a) for a in rep.branch_angles],
        "residual_is_zero": rep.residual_is_zero,
    }
    lines = [f"omega = 1 - u(z),  z = exp(i pi (A + 2k)/B) x^(1/B),  k = 0..{rep.B - 1}"]
    lines += [f"  z^{n}: {c}" for n, c in enumerate(rep.u_coefficients) if c]
    lines.append(f"back-substitution exact: {rep.residual_is_zero}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_PASS if rep.residual_is_zero else EXIT_FAIL


def cmd_suite(args) -> int:
    points = json.loads(Path(args.config).read_text()) if args.config else DEFAULT_GRID
    if not isinstance(points, list):
        raise UsageError("suite config must be a JSON list of {A, B, b, overrides}")
    for p in points:
        p.setdefault("overrides", {})
        p["overrides"].setdefault("precision", args.precision)
        p["overrides"].setdefault("tol", args.tol)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with ProcessPoolExecutor(max_workers=args.workers) as pool:
        reports = list(pool.map(run_point, points))
    summary = []
    for p, rep in zip(points, reports):
        name = f"A{p['A']}_B{p['B']}_{_slug(p['b'])}.json"
        (out / name).write_text(json.dumps(rep, indent=2, sort_keys=True) + "\n")
        summary.append({"report": name, "pass": rep["pass"]})
    summary.sort(key=lambda r: r["report"])
    total = {"schema_version": SCHEMA_VERSION, "points": summary, "pass": all(r["pass"] for r in summary)}
    (out / "summary.json").write_text(json.dumps(total, indent=2, sort_keys=True) + "\n")
    for r in summary:
        print(f"{'PASS' if r['pass'] else 'FAIL'}  {r['report']}")
    return EXIT_PASS if total["pass"] else EXIT_FAIL


def _slug(expr: str) -> str:
    return "".join(ch if ch.isalnum() or ch == "." else "_" for ch in expr).strip("_")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="working precision in digits")
    common.add_argument("--tol", default=DEFAULT_TOL, help="relative agreement tolerance")
    common.add_argument("--order", type=int, default=DEFAULT_ORDER, help="series truncation order")
    common.add_argument("--epsilon", help="contour height (expression; may use cb)")
    common.add_argument("--json", metavar="PATH", help="also write the result as JSON")
    common.add_argument("--config", metavar="PATH", help="suite config (JSON list)")

    parser = argparse.ArgumentParser(prog="stateint", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def ab(p):
        p.add_argument("A", type=int)
        p.add_argument("B", type=int)

    p = sub.add_parser("phi", parents=[common], help="evaluate Phi_b(x)")
    p.add_argument("--b", required=True)
    p.add_argument("--x", required=True)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("integral", parents=[common], help="contour integral I_{A,B}(b)")
    ab(p)
    p.add_argument("--b", required=True)
    p.add_argument("--tilt", help="arm angle in radians (0 = horizontal contour)")
    p.add_argument("--quad-tol", help="absolute quadrature target")
    p.set_defaults(func=cmd_integral)

    p = sub.add_parser("factorize", parents=[common], help="factorized value, both routes")
    ab(p)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("pab", parents=[common], help="canonical text of P_{A,B}")
    ab(p)
    p.set_defaults(func=cmd_pab)

    p = sub.add_parser("verify", parents=[common], help="integral vs both factorized forms (JSON report)")
    ab(p)
    p.add_argument("--b", required=True)
    p.add_argument("--tilt")
    p.add_argument("--timings", action="store_true", help="include wall times (makes output nondeterministic)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("qdiff", parents=[common], help="q-difference, omega and reflection checks")
    ab(p)
    p.add_argument("--q", default="(1+i)/4")
    p.add_argument("--q0", default="1/3", help="exact rational for the reflection check")
    p.set_defaults(func=cmd_qdiff)

    p = sub.add_parser("nahm", parents=[common], help="Puiseux solutions of the Nahm equation")
    ab(p)
    p.set_defaults(func=cmd_nahm)

    p = sub.add_parser("suite", parents=[common], help="run a grid of verify reports concurrently")
    p.add_argument("--out", default="suite_reports")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        return args.func(args)
    except PoleProximityError as exc:
        print(f"error: {exc} (pole index m={exc.index.m}, n={exc.index.n})", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ExpressionError, ModularPairError, ContourError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
