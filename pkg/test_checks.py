"""
Test dei controlli incrociati e dell'esecuzione in serie (multi_check).

Uso:
    pytest test_checks.py
"""
import json
import subprocess
from types import SimpleNamespace

import pytest

import multi_check
from checks.theorems import CheckResult, run_all, run_check, theorem1
from errors import ParseError


# === RISULTATI ===

def test_check_result_verdict():
    ok = CheckResult(2, "prova", 1e-12, 1e-10, {"t2": 1e-12})
    bad = CheckResult(2, "prova", 1e-3, 1e-10)
    assert ok.passed and ok.verdict == "PASS"
    assert not bad.passed and bad.verdict == "FAIL"


def test_check_result_frame():
    frame = CheckResult(6, "FDE CF vs forma chiusa", 2e-7, 1e-5, {"integral": 2e-7}).to_frame()
    assert list(frame.columns) == ["theorem", "check", "discrepancy", "tolerance", "verdict", "integral"]
    assert frame.iloc[0]["verdict"] == "PASS"


# === TEOREMI ===

@pytest.mark.parametrize("theorem", [8, 0, "abc"])
def test_unknown_theorem(theorem):
    with pytest.raises(ParseError):
        run_check(theorem)


def test_prabhakar_series_matches_direct():
    result = theorem1(functions=("t2",))
    assert result.passed
    assert result.details["t2"] <= 1e-8


@pytest.mark.parametrize("theorem", [2, 3])
def test_kernel_realizations(theorem):
    result = run_check(theorem)
    assert result.passed, result.details


@pytest.mark.parametrize("theorem", [4, 5])
def test_series_expansions(theorem):
    result = run_check(theorem)
    assert result.passed, result.details
    assert result.details["t_K"] >= 1
    # soglia assoluta sullo scarto grezzo, senza margini O(h²)
    assert result.tolerance == 1e-7
    assert result.discrepancy <= 1e-7
    assert result.details["t2_direct"] > result.discrepancy


@pytest.mark.parametrize("theorem", [4, 5])
def test_series_expansions_other_order(theorem):
    result = run_check(theorem, alpha=0.3, T=2.0)
    assert result.passed, result.details


@pytest.mark.parametrize("theorem", [6, 7])
def test_fde_closed_forms(theorem):
    result = run_check(theorem)
    assert result.passed, result.details
    assert result.details["laplace"] <= 1e-8
    # salto iniziale (1-α)/M·λ·y(0⁺) risolto: y(0⁺) = 2/3
    jumps = [value for key, value in result.details.items() if key.endswith("_jump")]
    assert jumps and all(j == pytest.approx(-1.0 / 3.0, abs=1e-12) for j in jumps)


def test_overrides_ignore_none():
    result = run_check(2, alphas=None, T=2.0)
    assert result.passed


def test_run_all_subset():
    results = run_all((2, 3))
    assert [r.theorem for r in results] == [2, 3]
    assert all(r.passed for r in results)


# === MULTI_CHECK ===

def _write(tmp_path, payload):
    path = tmp_path / "checks.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def test_load_example_config():
    config = multi_check.load_checks("checks.example.json")
    assert len(config["checks"]) == 8
    assert {case["theorem"] for case in config["checks"]} == set(range(1, 8))


@pytest.mark.parametrize("payload", [
    {"checks": []},
    {"checks": [{"name": "senza_teorema"}]},
    {"checks": [{"theorem": 2, "colore": "rosso"}]},
])
def test_load_rejects_bad_config(tmp_path, payload):
    with pytest.raises(SystemExit) as info:
        multi_check.load_checks(_write(tmp_path, payload))
    assert info.value.code == 2


def test_load_missing_file(tmp_path):
    with pytest.raises(SystemExit) as info:
        multi_check.load_checks(tmp_path / "assente.json")
    assert info.value.code == 2


def test_build_command():
    cmd = multi_check.build_command({"theorem": 6, "alpha": 0.5, "h": 0.001, "name": "x"}, "out/x.csv")
    assert cmd[1:] == ["cli.py", "crosscheck", "--theorem", "6", "--alpha", "0.5", "--h", "0.001", "--out", "out/x.csv"]


def test_run_checks_collects_exit_codes(monkeypatch, capsys):
    codes = iter([0, 1, 0])
    monkeypatch.setattr(subprocess, "run", lambda cmd, **kwargs: SimpleNamespace(returncode=next(codes)))
    config = {"checks": [{"name": "a", "theorem": 2}, {"name": "b", "theorem": 3}, {"name": "c", "theorem": 4}]}

    results = multi_check.run_checks(config)
    assert results == [("a", 0), ("b", 1), ("c", 0)]
    output = capsys.readouterr().out
    assert "✓ PASS: a" in output
    assert "✗ FAIL: b (exit code: 1)" in output


def test_run_checks_stop_on_fail(monkeypatch):
    monkeypatch.setattr(subprocess, "run", lambda cmd, **kwargs: SimpleNamespace(returncode=4))
    config = {"checks": [{"theorem": 2}, {"theorem": 3}]}
    results = multi_check.run_checks(config, stop_on_fail=True)
    assert results == [("teorema2_01", 4)]


def test_main_exit_code(monkeypatch, tmp_path):
    monkeypatch.setattr(subprocess, "run", lambda cmd, **kwargs: SimpleNamespace(returncode=0))
    path = _write(tmp_path, {"checks": [{"theorem": 2}]})
    monkeypatch.setattr("sys.argv", ["multi_check.py", str(path), "--out-dir", str(tmp_path / "csv")])
    assert multi_check.main() == 0
    assert (tmp_path / "csv").is_dir()
