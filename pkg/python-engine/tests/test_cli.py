"""
End-to-end tests of the command-line entry point.
"""

import importlib.util
import json
import math
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

import main
from cpdetect.cli import cmd_generate, signal_preview
from cpdetect.grids import AUTO, resolve_scan_grid
from cpdetect.reporting import VOLATILE_KEYS, read_matrix_csv, write_matrix_csv
from cpdetect.simulation import AlternativeSpec

REPO_ROOT = Path(__file__).resolve().parents[2]


def _load_json(path):
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def _strip_volatile(document):
    if isinstance(document, dict):
        return {k: _strip_volatile(v) for k, v in document.items() if k not in VOLATILE_KEYS}
    if isinstance(document, list):
        return [_strip_volatile(v) for v in document]
    return document


class TestDetect:
    """Tests for `detect`."""

    def test_minimal_matrix(self, tmp_path):
        csv = tmp_path / "tiny.csv"
        csv.write_text("0,0\n", encoding="utf-8")
        out = tmp_path / "tiny.json"
        assert main.main(["detect", str(csv), "--out", str(out)]) == 0
        report = _load_json(out)
        assert report["grid_size"] == 1
        assert report["pbj"]["statistic"] == pytest.approx(math.log(2))
        assert report["pbj"]["reject"] == (report["pbj"]["penalized"] > report["pbj"]["threshold"])
        assert "degenerate_threshold" in report["flags"]
        assert "grid_fallback:all_columns" in report["flags"]
        assert report["schema_version"] == 1

    def test_null_fixture_accepts(self, tmp_path):
        csv, out = tmp_path / "null.csv", tmp_path / "null.json"
        assert main.main(["generate", "--p", "200", "--n", "2000", "--seed", "11", "--out", str(csv)]) == 0
        assert main.main(["detect", str(csv), "--gamma", "2", "--out", str(out)]) == 0
        report = _load_json(out)
        assert report["combined_reject"] is False
        assert (report["p"], report["n"]) == (200, 2000)

    def test_planted_fixture_rejects(self, tmp_path):
        csv, out = tmp_path / "alt.csv", tmp_path / "alt.json"
        assert main.main(["generate", "--p", "200", "--n", "2000", "--seed", "11", "--t-star", "700",
                          "--s", "50", "--rho", "4", "--out", str(csv)]) == 0
        assert main.main(["detect", str(csv), "--out", str(out)]) == 0
        report = _load_json(out)
        assert report["combined_reject"] is True
        assert report["pbj"]["reject"] is True

    def test_two_sided_planted(self, tmp_path):
        csv, out = tmp_path / "alt2.csv", tmp_path / "alt2.json"
        assert main.main(["generate", "--p", "100", "--n", "500", "--seed", "3", "--s", "20",
                          "--rho", "6", "--side", "two", "--out", str(csv)]) == 0
        assert main.main(["detect", str(csv), "--side", "two", "--out", str(out)]) == 0
        assert _load_json(out)["combined_reject"] is True

    def test_ragged_rows(self, tmp_path, capsys):
        csv = tmp_path / "ragged.csv"
        csv.write_text("1,2,3\n4,5\n", encoding="utf-8")
        assert main.main(["detect", str(csv)]) == 2
        assert "line 2" in capsys.readouterr().err

    def test_non_numeric_cell(self, tmp_path, capsys):
        csv = tmp_path / "bad.csv"
        csv.write_text("1,2,3\n4,x,6\n", encoding="utf-8")
        assert main.main(["detect", str(csv)]) == 2
        err = capsys.readouterr().err
        assert "line 2" in err and "column 2" in err

    def test_bad_delta(self, tmp_path):
        csv = tmp_path / "m.csv"
        csv.write_text("0,1,0,1\n", encoding="utf-8")
        assert main.main(["detect", str(csv), "--delta", "-1"]) == 2


class TestBoundary:
    """Tests for `boundary`."""

    def test_moderate_case(self, tmp_path):
        out = tmp_path / "b.json"
        assert main.main(["boundary", "--a", "0.1", "--beta", "0.6", "--p", repr(math.e), "--out", str(out)]) == 0
        report = _load_json(out)
        assert report["rho_squared"] == pytest.approx(0.3, abs=1e-12)
        assert report["case_label"] == "Moderate"

    def test_regime2(self, tmp_path):
        out = tmp_path / "b2.json"
        assert main.main(["boundary", "--a", "0.5", "--beta", "1", "--p", "200", "--regime2",
                          "--out", str(out)]) == 0
        report = _load_json(out)
        assert report["r"] == pytest.approx(1.5)
        assert report["rho_squared"] == pytest.approx(3 * math.log(200))

    def test_reference_rates(self, tmp_path):
        out = tmp_path / "b3.json"
        assert main.main(["boundary", "--a", "0.2", "--beta", "0.5", "--p", "100", "--n", "1000",
                          "--s", "10", "--out", str(out)]) == 0
        rates = _load_json(out)["reference_rates"]
        assert rates["collier"] == pytest.approx(10.0)
        assert rates["up_to_constants"] is True

    def test_invalid_beta(self, capsys):
        assert main.main(["boundary", "--a", "0.1", "--beta", "1.2", "--p", "100"]) == 2
        assert "calibration out of range" in capsys.readouterr().err


class TestSimulateAndSweep:
    """Tests for `simulate` and `sweep`."""

    def test_type_one_audit_short(self, tmp_path):
        out = tmp_path / "audit.json"
        assert main.main(["simulate", "typeI-audit", "--trials", "20", "--workers", "1", "--out", str(out)]) == 0
        report = _load_json(out)
        assert report["trials"] == 20
        assert report["type1_hat"] <= 0.05
        assert report["run"]["seed"] == 20240917

    @pytest.mark.slow
    def test_type_one_audit_full(self, tmp_path):
        out = tmp_path / "audit.json"
        assert main.main(["simulate", "typeI-audit", "--out", str(out)]) == 0
        report = _load_json(out)
        assert report["type1_hat"] <= 0.01 + 3 * math.sqrt(0.01 * 0.99 / 200)

    def test_reproducible_across_workers(self, tmp_path):
        config = tmp_path / "small.yaml"
        config.write_text(
            "schema_version: 1\nkind: simulate\nseed: 77\ntrials: 60\n"
            "h0: {model: \"null\", p: 20, n: 64}\n"
            "h1: {model: alternative, p: 20, n: 64, t_star: 20, s: 3, rho: 3.0}\n",
            encoding="utf-8",
        )
        one, two = tmp_path / "w1.json", tmp_path / "w2.json"
        assert main.main(["simulate", str(config), "--workers", "1", "--out", str(one)]) == 0
        assert main.main(["simulate", str(config), "--workers", "2", "--out", str(two)]) == 0
        assert _strip_volatile(_load_json(one)) == _strip_volatile(_load_json(two))

    def test_simulate_csv_sidecar(self, tmp_path):
        out = tmp_path / "audit.csv"
        assert main.main(["simulate", "typeI-audit", "--trials", "5", "--format", "csv", "--out", str(out)]) == 0
        frame = pd.read_csv(out)
        assert {"type1_hat", "type2_hat", "type1_lo", "type2_hi"} <= set(frame.columns)
        assert _load_json(f"{out}.meta.json")["run"]["seed"] == 20240917

    def test_wrong_kind(self):
        assert main.main(["simulate", "phase-demo"]) == 2

    def test_empty_sweep_header_only(self, tmp_path):
        config = tmp_path / "empty.yaml"
        config.write_text("schema_version: 1\nkind: sweep\np: 50\nmultipliers: [1.0]\ns_values: [5]\n",
                          encoding="utf-8")
        out = tmp_path / "empty.csv"
        assert main.main(["sweep", str(config), "--out", str(out)]) == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 1
        assert lines[0].split(",")[0] == "a"
        assert lines[0].split(",")[-1] == "saturated_flag"

    def test_invalid_config(self, tmp_path, capsys):
        config = tmp_path / "bad.yaml"
        config.write_text("schema_version: 1\nkind: sweep\np: 1\n", encoding="utf-8")
        assert main.main(["sweep", str(config)]) == 2
        err = capsys.readouterr().err
        assert "p: must be at least 2" in err
        assert "multipliers: required" in err

    def test_bad_worker_env(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("CPDETECT_WORKERS", "many")
        out = tmp_path / "audit.json"
        assert main.main(["simulate", "typeI-audit", "--trials", "2", "--out", str(out)]) == 2
        assert "CPDETECT_WORKERS" in capsys.readouterr().err
        assert not out.exists()


class TestGenerate:
    """Tests for `generate` and its signal preview."""

    def test_preview_of_planted_change(self, tmp_path):
        csv = tmp_path / "alt.csv"
        report = cmd_generate(p=40, n=512, out=str(csv), seed=3, t_star=150, s=5, rho=3.0)
        preview = report["preview"]
        grid = resolve_scan_grid(512, AUTO)
        assert preview["grid_size"] == len(grid)
        assert preview["best_split"] in grid.points
        # the nearest grid split sees at least rho / sqrt(1 + 2 delta)
        assert 3.0 / math.sqrt(1 + 2 * grid.delta) - 1e-12 <= preview["max_mean_contrast"] <= 3.0 + 1e-12

    def test_preview_on_grid_point(self):
        grid = resolve_scan_grid(512, AUTO)
        t = grid.points[len(grid) // 2]
        spec = AlternativeSpec(p=10, n=512, t_star=t, support=(0, 1), rho=2.5)
        preview = signal_preview(spec)
        assert preview["best_split"] == t
        assert preview["max_mean_contrast"] == pytest.approx(2.5, abs=1e-12)

    def test_null_has_no_preview(self, tmp_path):
        report = cmd_generate(p=5, n=20, out=str(tmp_path / "null.csv"))
        assert report["preview"] is None
        assert report["scenario"]["model"] == "null"


class TestMatrixIo:
    """Tests for the CSV matrix format."""

    def test_round_trip_exact(self, tmp_path, rng):
        values = rng.normal(size=(7, 13)) * 10.0 ** rng.integers(-5, 5, size=(7, 13))
        path = tmp_path / "m.csv"
        write_matrix_csv(values, path)
        assert np.array_equal(read_matrix_csv(path).values, values)

    def test_single_column(self, tmp_path):
        path = tmp_path / "col.csv"
        path.write_text("1\n2\n", encoding="utf-8")
        with pytest.raises(ValueError, match="at least 2 columns"):
            read_matrix_csv(path)


class TestCompareResults:
    """Tests for the repository-level result comparison script."""

    @pytest.fixture
    def compare(self):
        spec = importlib.util.spec_from_file_location("compare_results", REPO_ROOT / "compare_results.py")
        module = importlib.util.module_from_spec(spec)
        spec.loader.exec_module(module)
        return module

    def test_ignores_volatile_fields(self, tmp_path, compare):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        a.write_text(json.dumps({"x": 1, "run": {"seed": 1, "timestamp": {"utc": "a"}}}), encoding="utf-8")
        b.write_text(json.dumps({"x": 1, "run": {"seed": 1, "timestamp": {"utc": "b"}}}), encoding="utf-8")
        assert compare.compare_files(a, b) == []

    def test_reports_differences(self, tmp_path, compare):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        a.write_text(json.dumps({"x": 1, "y": [1, 2]}), encoding="utf-8")
        b.write_text(json.dumps({"x": 2, "y": [1, 3]}), encoding="utf-8")
        assert compare.compare_files(a, b) == ["x", "y[1]"]

    def test_csv_tables(self, tmp_path, compare):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        a.write_text("a,risk\n0.1,0.5\n", encoding="utf-8")
        b.write_text("a,risk\n0.1,0.25\n", encoding="utf-8")
        assert compare.compare_files(a, b) == ["row 0: risk"]
