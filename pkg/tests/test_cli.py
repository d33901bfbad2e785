import json

import mpmath as mp
import pytest

from stateint.cli import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main
from stateint.expr import parse_complex

from conftest import GOLDEN

REPORT_KEYS = {"schema_version", "parameters", "values", "discrepancies", "checks", "errors", "timings_ms", "pass"}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_phi_at_zero(capsys):
    code, out, _ = run(capsys, "phi", "--b", "exp(i*pi/4)", "--x", "0")
    assert code == EXIT_PASS
    assert abs(parse_complex(out.strip(), 40) - 1) < mp.mpf(10) ** -35


def test_phi_output_round_trips(capsys, tmp_path):
    path = tmp_path / "phi.json"
    code, out, _ = run(capsys, "phi", "--b", "exp(i*pi/3)", "--x", "0.3+0.1*i", "--json", str(path))
    assert code == EXIT_PASS
    payload = json.loads(path.read_text())
    assert payload["phi"] == out.strip()
    assert parse_complex(payload["phi"], 40) != 0


def test_phi_at_pole(capsys):
    code, _, err = run(capsys, "phi", "--b", "exp(i*pi/4)", "--x", "cb")
    assert code == EXIT_USAGE
    assert "m=0, n=0" in err


def test_verify_passes_and_is_deterministic(capsys):
    argv = ("verify", "1", "2", "--b", "exp(i*pi/4)")
    code, first, _ = run(capsys, *argv)
    assert code == EXIT_PASS
    _, second, _ = run(capsys, *argv)
    assert first == second
    report = json.loads(first)
    assert set(report) == REPORT_KEYS
    assert report["pass"] is True and report["timings_ms"] is None
    assert report["schema_version"] == 1
    assert set(report["checks"]) == {"integral_vs_factorized", "integral_vs_theorem", "factorized_vs_theorem"}
    assert all(float(d["relative"]) < 1e-25 for d in report["discrepancies"].values())


def test_verify_23(capsys):
    code, out, _ = run(capsys, "verify", "2", "3", "--b", "exp(i*pi/3)")
    assert code == EXIT_PASS
    assert json.loads(out)["pass"] is True


def test_verify_timings(capsys):
    code, out, _ = run(capsys, "verify", "1", "2", "--b", "exp(i*pi/4)", "--precision", "25", "--tol", "1e-12", "--timings")
    assert code == EXIT_PASS
    assert set(json.loads(out)["timings_ms"]) == {"integral", "factorized", "theorem"}


def test_verify_impossible_tolerance_fails(capsys):
    # 1e-60 cannot be met at 30 digits, so the report is a FAIL rather than a usage error
    code, out, _ = run(capsys, "verify", "1", "2", "--b", "exp(i*pi/4)", "--precision", "30", "--tol", "1e-60")
    assert code == EXIT_FAIL
    assert json.loads(out)["pass"] is False


def test_verify_rejects_bad_pair(capsys):
    code, _, err = run(capsys, "verify", "2", "1", "--b", "exp(i*pi/4)")
    assert code == EXIT_USAGE
    assert "B > A > 0 violated" in err


def test_pab_matches_golden(capsys):
    code, out, _ = run(capsys, "pab", "2", "3")
    assert code == EXIT_PASS
    assert out.strip() == (GOLDEN / "pab_2_3.txt").read_text().strip()


def test_pab_deterministic(capsys):
    _, a, _ = run(capsys, "pab", "1", "2")
    _, b, _ = run(capsys, "pab", "1", "2")
    assert a == b == "1/2*b + d*b - 2*d1*b - 1/2*b^-1 - dt*b^-1 + 2*dt1*b^-1\n"


def test_qdiff(capsys):
    code, out, _ = run(capsys, "qdiff", "2", "3", "--order", "8")
    assert code == EXIT_PASS
    payload = json.loads(out)
    assert payload["reflection_exact"] is True
    assert float(payload["linear_residual"]) < 1e-30


def test_nahm(capsys):
    code, out, _ = run(capsys, "nahm", "1", "2", "--order", "5")
    assert code == EXIT_PASS
    assert "z^5: -1/128" in out


def test_usage_errors(capsys):
    assert run(capsys, "verify", "1")[0] == EXIT_USAGE
    assert run(capsys, "nosuchcommand")[0] == EXIT_USAGE
    assert run(capsys, "phi", "--b", "exp(i*pi/4)", "--x", "1+")[0] == EXIT_USAGE
    assert run(capsys, "phi", "--b", "i", "--x", "0")[0] == EXIT_USAGE


def test_suite(capsys, tmp_path):
    points = [
        {"A": A, "B": B, "b": b}
        for A, B in [(1, 2), (2, 3), (1, 3)]
        for b in ["exp(i*pi/4)", "exp(i*pi/3)", "1.1*exp(i*pi/5)"]
    ]
    config = tmp_path / "grid.json"
    config.write_text(json.dumps(points))
    out_dir = tmp_path / "reports"
    code, out, _ = run(capsys, "suite", "--config", str(config), "--out", str(out_dir))
    assert code == EXIT_PASS
    assert out.count("PASS") == 9
    summary = json.loads((out_dir / "summary.json").read_text())
    assert summary["pass"] is True
    names = [p["report"] for p in summary["points"]]
    assert names == sorted(names) and len(names) == 9
    for name in names:
        assert json.loads((out_dir / name).read_text())["pass"] is True


def test_suite_rejects_bad_config(capsys, tmp_path):
    config = tmp_path / "grid.json"
    config.write_text('{"A": 1}')
    code, _, err = run(capsys, "suite", "--config", str(config), "--out", str(tmp_path / "r"))
    assert code == EXIT_USAGE
    assert "JSON list" in err
