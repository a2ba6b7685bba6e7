"""Command-line behavior: exit codes, emitted files, determinism."""

import json
from pathlib import Path

import pytest

from counterpdc.cli import main
from counterpdc.exporters import JSA_HEADER, MARGINAL_HEADER, SWEEP_HEADER

SMALL_GRID = ["--set", "grid.n_signal=96", "--set", "grid.n_idler=96"]


def read_header(path: Path) -> str:
    return path.read_text().splitlines()[0]


class TestValidate:
    def test_default_config_validates_clean(self, capsys):
        assert main(["validate"]) == 0
        out = capsys.readouterr().out
        assert "material.id = LN_e" in out
        assert "pump.center_nm = 775.0" in out

    def test_bad_key_exits_one(self, tmp_path, capsys):
        cfg = tmp_path / "bad.yaml"
        cfg.write_text("waveguide:\n  width_um: -1\n")
        assert main(["validate", "--config", str(cfg)]) == 1
        assert "waveguide" in capsys.readouterr().err

    def test_missing_file_exits_one(self, tmp_path, capsys):
        assert main(["validate", "--config", str(tmp_path / "absent.yaml")]) == 1
        assert "configuration error" in capsys.readouterr().err


class TestGrating:
    def test_prints_submicron_period(self, tmp_path, capsys):
        out_dir = tmp_path / "out"
        assert main(["grating", "--out", str(out_dir)]) == 0
        printed = capsys.readouterr().out
        assert "grating_period_um = 0.356" in printed
        payload = json.loads((out_dir / "grating.json").read_text())
        assert payload["grating_period_um"] == pytest.approx(0.3562, abs=1e-3)
        assert (out_dir / "manifest.json").exists()


class TestJsa:
    def test_emits_documented_schema(self, tmp_path):
        out_dir = tmp_path / "out"
        assert main(["jsa", "--out", str(out_dir), *SMALL_GRID]) == 0
        assert read_header(out_dir / "jsa.csv") == JSA_HEADER
        assert read_header(out_dir / "pump_envelope.csv") == JSA_HEADER
        assert read_header(out_dir / "phasematching.csv") == JSA_HEADER
        assert read_header(out_dir / "marginal_signal.csv") == MARGINAL_HEADER
        assert read_header(out_dir / "marginal_idler.csv") == MARGINAL_HEADER
        meta = json.loads((out_dir / "jsa_meta.json").read_text())
        assert meta["grid_shape"] == [96, 96]
        assert meta["norm"] == pytest.approx(1.0, abs=1e-9)
        manifest = json.loads((out_dir / "manifest.json").read_text())
        assert {o["file"] for o in manifest["outputs"]} >= {
            "jsa.csv", "marginal_signal.csv", "marginal_idler.csv",
        }

    def test_json_format(self, tmp_path):
        out_dir = tmp_path / "out"
        assert main(["jsa", "--out", str(out_dir), "--format", "json", *SMALL_GRID]) == 0
        payload = json.loads((out_dir / "jsa.json").read_text())
        assert len(payload["omega_s_rad_s"]) == 96
        assert len(payload["re"]) == 96

    def test_byte_identical_reruns(self, tmp_path):
        first = tmp_path / "a"
        second = tmp_path / "b"
        for out_dir in (first, second):
            assert main(["jsa", "--out", str(out_dir), *SMALL_GRID]) == 0
        for name in ("jsa.csv", "pump_envelope.csv", "phasematching.csv",
                     "marginal_signal.csv", "marginal_idler.csv"):
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_input_config_not_mutated(self, tmp_path):
        cfg = tmp_path / "cfg.yaml"
        cfg.write_text("grid:\n  n_signal: 96\n  n_idler: 96\n")
        before = cfg.read_bytes()
        assert main(["jsa", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 0
        assert cfg.read_bytes() == before

    def test_validation_failure_leaves_no_outputs(self, tmp_path, capsys):
        cfg = tmp_path / "bad.yaml"
        cfg.write_text("grating:\n  mode: fixed\n  period_um: 0\n")
        out_dir = tmp_path / "out"
        assert main(["jsa", "--config", str(cfg), "--out", str(out_dir)]) == 1
        assert not out_dir.exists()

    def test_solver_failure_exits_two(self, tmp_path, capsys):
        out_dir = tmp_path / "out"
        code = main([
            "jsa", "--out", str(out_dir),
            "--set", "grating.mode=fixed", "--set", "grating.period_um=0.2",
        ])
        assert code == 2
        assert "jsa failed" in capsys.readouterr().err
        assert not out_dir.exists()


class TestAngle:
    def test_reports_near_horizontal_ridge(self, tmp_path, capsys):
        out_dir = tmp_path / "out"
        assert main(["angle", "--out", str(out_dir)]) == 0
        assert "theta_deg = -1.18" in capsys.readouterr().out
        payload = json.loads((out_dir / "angle.json").read_text())
        assert payload["theta_deg"] == pytest.approx(-1.181, abs=0.05)
        assert payload["lambda_s_nm"] == pytest.approx(1550.0, abs=0.01)

    def test_material_override(self, tmp_path, capsys):
        out_dir = tmp_path / "out"
        assert main(["angle", "--out", str(out_dir), "--set", "material.id=KTP_z"]) == 0
        payload = json.loads((out_dir / "angle.json").read_text())
        assert payload["theta_deg"] == pytest.approx(-1.029, abs=0.05)
        assert payload["grating_period_um"] == pytest.approx(0.42016, abs=1e-3)


class TestSchmidt:
    def test_emits_spectrum_and_summary(self, tmp_path, capsys):
        out_dir = tmp_path / "out"
        assert main(["schmidt", "--out", str(out_dir), *SMALL_GRID]) == 0
        lines = (out_dir / "schmidt.csv").read_text().splitlines()
        assert lines[0] == "n,lambda_n"
        assert lines[1].startswith("0,")
        summary = json.loads((out_dir / "schmidt_summary.json").read_text())
        assert 0.0 < summary["lambda0"] <= 1.0
        assert summary["schmidt_number"] >= 1.0


class TestSweeps:
    def test_degenerate_sweep_schema_and_row_count(self, tmp_path):
        out_dir = tmp_path / "out"
        code = main([
            "sweep-degenerate", "--out", str(out_dir),
            "--set", "sweep.optimize=false", "--set", "sweep.materials=[LN_e]",
        ])
        assert code == 0
        path = out_dir / "sweep_degenerate_LN_e.csv"
        lines = path.read_text().splitlines()
        assert lines[0] == SWEEP_HEADER
        assert len(lines) == 1 + 17
        assert all(line.endswith(",ok") for line in lines[1:])

    def test_degenerate_sweep_json_format(self, tmp_path):
        out_dir = tmp_path / "out"
        code = main([
            "sweep-degenerate", "--out", str(out_dir), "--format", "json",
            "--set", "sweep.optimize=false", "--set", "sweep.materials=[KTP_z]",
            "--set", "sweep.steps=4",
        ])
        assert code == 0
        rows = json.loads((out_dir / "sweep_degenerate_KTP_z.json").read_text())
        assert len(rows) == 4
        assert rows[0]["status"] == "ok"
        assert rows[0]["lambda0"] is None  # unoptimized rows carry no quality data
        assert 0.2 <= rows[0]["grating_um"] <= 0.6

    def test_tuning_sweep_fixed_grating(self, tmp_path):
        out_dir = tmp_path / "out"
        code = main([
            "sweep-tuning", "--out", str(out_dir),
            "--set", "tuning.steps=3", "--set", "tuning.n_grid=64",
        ])
        assert code == 0
        lines = (out_dir / "sweep_tuning_LN_e.csv").read_text().splitlines()
        assert lines[0] == SWEEP_HEADER
        assert len(lines) == 1 + 3


class TestOptimizePump:
    def test_writes_certificate_and_summary(self, tmp_path):
        out_dir = tmp_path / "out"
        code = main([
            "optimize-pump", "--out", str(out_dir),
            "--set", "optimize.n_grid=64",
            "--set", "optimize.min_fwhm_nm=0.1", "--set", "optimize.max_fwhm_nm=0.3",
        ])
        assert code == 0
        history = (out_dir / "optimize_history.csv").read_text().splitlines()
        assert history[0] == "pump_fwhm_nm,lambda0"
        assert len(history) > 10
        summary = json.loads((out_dir / "optimize_result.json").read_text())
        assert 0.1 <= summary["pump_fwhm_nm"] <= 0.3
        assert summary["evaluations"] == len(history) - 1
