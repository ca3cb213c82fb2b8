"""Tests for the command-line interface."""

import json
import math

import pytest

from wignerbounds.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBounds:
    def test_wedge_values(self, capsys):
        code, out, _ = run(capsys, "bounds", "--family", "wedge")
        assert code == 0
        lower = float(out.splitlines()[0].split()[2])
        upper = float(out.splitlines()[1].split()[2])
        assert lower == pytest.approx(-0.155939843, abs=1e-8)
        assert upper == pytest.approx(1.007679970, abs=1e-8)

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "bounds", "--family", "double-wedge",
                           "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["lower"] + payload["upper"] == pytest.approx(1.0, abs=1e-10)
        assert payload["version"]
        assert payload["config"]["family"] == "double-wedge"

    def test_missing_k_is_usage_error(self, capsys):
        code, _, err = run(capsys, "bounds", "--family", "hyperbola")
        assert code == 2
        assert "--k is required" in err

    def test_spurious_k_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "bounds", "--family", "wedge", "--k", "1")
        assert code == 2


class TestSpectrum:
    def test_header_and_origin_row(self, capsys, tmp_path):
        out_file = tmp_path / "spec.csv"
        code, _, _ = run(capsys, "spectrum", "--family", "wedge",
                         "--omega-min", "-1", "--omega-max", "1",
                         "--step", "0.5", "--out", str(out_file))
        assert code == 0
        lines = out_file.read_text().splitlines()
        assert lines[0] == "omega,mu_minus,mu_plus"
        assert len(lines) == 6
        _, mu_lo, mu_hi = (float(v) for v in lines[3].split(","))
        assert mu_lo == pytest.approx((1.0 - math.sqrt(2.0)) / 4.0, abs=1e-10)
        assert mu_hi == pytest.approx((1.0 + math.sqrt(2.0)) / 4.0, abs=1e-10)

    def test_deterministic_output(self, capsys, tmp_path):
        args = ("spectrum", "--family", "double-wedge", "--omega-min", "-2",
                "--omega-max", "2", "--step", "0.25")
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        run(capsys, *args, "--out", str(a))
        run(capsys, *args, "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_bad_step(self, capsys):
        code, _, _ = run(capsys, "spectrum", "--family", "wedge",
                         "--step", "-0.1")
        assert code == 2


class TestSweep:
    def test_small_sweep_csv(self, capsys, tmp_path):
        out_file = tmp_path / "sweep.csv"
        code, _, _ = run(capsys, "sweep", "--kind", "double", "--k-min", "0",
                         "--k-max", "0.4", "--steps", "3",
                         "--out", str(out_file))
        assert code == 0
        lines = out_file.read_text().splitlines()
        assert lines[0] == "k,lower,upper,omega_lower,omega_upper"
        assert len(lines) == 4
        last = [float(v) for v in lines[3].split(",")]
        assert last[0] == pytest.approx(0.4)
        assert last[1] == pytest.approx(-0.4014, abs=5e-4)


class TestOracle:
    def test_contained_states_pass(self, capsys):
        code, out, _ = run(capsys, "oracle", "--family", "wedge",
                           "--state", "fock:0", "--state", "coherent:3,3")
        assert code == 0
        payload = json.loads(out)
        assert payload["pass"] is True
        assert payload["entries"][0]["qpi"] == pytest.approx(0.25, abs=1e-6)
        assert payload["entries"][1]["qpi"] == pytest.approx(0.999978, abs=1e-5)

    def test_no_states_usage_error(self, capsys):
        code, _, _ = run(capsys, "oracle", "--family", "wedge")
        assert code == 2

    def test_bad_state_spec(self, capsys):
        code, _, err = run(capsys, "oracle", "--family", "wedge",
                           "--state", "cat:1,2")
        assert code == 2
        assert "state" in err


class TestKernelCheck:
    def test_fock0_k0(self, capsys):
        code, out, _ = run(capsys, "kernel-check", "--state", "fock:0",
                           "--k", "0")
        assert code == 0
        payload = json.loads(out)
        assert payload["operator_side"] == pytest.approx(0.25, abs=1e-8)
        assert payload["phase_space_side"] == pytest.approx(0.25, abs=1e-7)
        assert payload["pass"] is True


class TestConfigPlumbing:
    def test_config_file_supplies_defaults(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("omega-min = -1\nomega-max = 1\nstep = 0.5\n")
        code, out, _ = run(capsys, "spectrum", "--family", "wedge",
                           "--config", str(cfg))
        assert code == 0
        assert len(out.splitlines()) == 6

    def test_flags_win_over_config(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("step = 0.5\n")
        code, out, _ = run(capsys, "spectrum", "--family", "wedge",
                           "--omega-min", "-1", "--omega-max", "1",
                           "--step", "1", "--config", str(cfg))
        assert code == 0
        assert len(out.splitlines()) == 4

    def test_outdir_env_var(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("WIGNER_BOUNDS_OUTDIR", str(tmp_path))
        code, _, _ = run(capsys, "spectrum", "--family", "wedge",
                         "--omega-min", "0", "--omega-max", "1",
                         "--step", "0.5", "--out", "rel.csv")
        assert code == 0
        assert (tmp_path / "rel.csv").exists()
