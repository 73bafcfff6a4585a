"""
Unit tests for the command-line interface.

Tests cover:
- Curve commands writing rows and manifests
- Exit codes for configuration, fixture and numerical failures
- optimize storing records, with the default design grid from settings
- Warnings for stores designed under another Chernoff distance divisor
- latency with the sweep mocked
"""

import json

import pytest

from constellation_designer.config import settings
from constellation_designer.core.errors import NumericalFailureError
from constellation_designer.core.models import LatencyCell
from constellation_designer.main import fading_parameter, main
from constellation_designer.services.lut_store import JsonLutStore
from constellation_designer.utils.output import read_rows
from constellation_designer.utils.validation import FixtureReport


def _manifest(out):
    return json.loads(out.with_name(out.name + ".manifest.json").read_text(encoding="utf-8"))


class TestArguments:
    """Test cases for argument parsing."""

    @pytest.mark.parametrize("text, expected", [("2", 2), ("awgn", "awgn"), ("INF", "awgn")])
    def test_fading_parameter(self, text, expected):
        assert fading_parameter(text) == expected

    def test_invalid_settings(self, mocker):
        mocker.patch.object(settings, "WORKERS", 0)
        assert main(["verify-fixtures"]) == 2

    @pytest.mark.parametrize("text", ["0", "half"])
    def test_bad_fading_parameter_exits(self, tmp_path, text):
        with pytest.raises(SystemExit) as exc:
            main(["bound-curve", "--m", text, "--snr", "10", "--mcs", "1", "--out", str(tmp_path / "x.csv")])
        assert exc.value.code == 2


class TestCurveCommands:
    """Test cases for bound-curve, sim-curve and se-curve."""

    def test_bound_curve(self, tmp_path, capsys):
        out = tmp_path / "bound.csv"
        code = main(["bound-curve", "--m", "2", "--snr", "18,20", "--mcs", "1", "--out", str(out)])

        assert code == 0
        rows = read_rows(out)
        assert [row["snr_db"] for row in rows] == ["18.0", "20.0"]
        assert all(row["divergent"] == "false" for row in rows)
        assert float(rows[1]["pb"]) < float(rows[0]["pb"]) < 1.0
        manifest = _manifest(out)
        assert manifest["command"] == "bound-curve"
        assert manifest["config"]["source"] == "conventional"
        assert str(out) in capsys.readouterr().out

    def test_adaptive_flags_store_divisor(self, tmp_path):
        out = tmp_path / "bound.csv"
        code = main([
            "bound-curve", "--m", "2", "--snr", "18", "--mcs", "1", "--source", "adaptive", "--out", str(out),
        ])
        assert code == 0
        assert any("divisor 1;" in w for w in _manifest(out)["warnings"])

    def test_conventional_has_no_divisor_warning(self, tmp_path):
        out = tmp_path / "bound.csv"
        assert main(["bound-curve", "--m", "2", "--snr", "18", "--mcs", "1", "--out", str(out)]) == 0
        assert _manifest(out)["warnings"] == []

    def test_adaptive_without_record(self, tmp_path):
        out = tmp_path / "bound.csv"
        code = main([
            "bound-curve", "--m", "2", "--snr", "12", "--mcs", "3", "--source", "adaptive", "--out", str(out),
        ])
        assert code == 2
        assert not out.exists()

    def test_bad_grid(self, tmp_path):
        code = main(["bound-curve", "--m", "2", "--snr", "20:10:1", "--mcs", "1", "--out", str(tmp_path / "b.csv")])
        assert code == 2

    def test_numerical_failure(self, tmp_path, mocker):
        mocker.patch(
            "constellation_designer.main.evaluate_bound",
            side_effect=NumericalFailureError("singular system"),
        )
        code = main(["bound-curve", "--m", "2", "--snr", "18", "--mcs", "1", "--out", str(tmp_path / "b.csv")])
        assert code == 4

    def test_sim_curve(self, tmp_path):
        out = tmp_path / "sim.csv"
        code = main([
            "sim-curve", "--m", "awgn", "--snr", "30", "--mcs", "1", "--nb", "50",
            "--min-errors", "1", "--max-frames", "2", "--seed", "3", "--out", str(out),
        ])

        assert code == 0
        (row,) = read_rows(out)
        assert row["pb_source"] == "sim"
        assert row["frames"] == "2"
        assert row["bit_errors"] == "0"
        assert float(row["se"]) == pytest.approx(2.0)
        assert _manifest(out)["seed"] == 3

    def test_se_curve_envelope_rows(self, tmp_path):
        out = tmp_path / "se.csv"
        code = main(["se-curve", "--m", "2", "--snr", "12,40", "--mcs", "1,2", "--out", str(out)])

        assert code == 0
        rows = read_rows(out)
        assert [row["mcs"] for row in rows] == ["1", "2", "envelope", "1", "2", "envelope"]
        for i in (2, 5):
            assert float(rows[i]["se"]) == max(float(rows[i - 1]["se"]), float(rows[i - 2]["se"]))
        assert any("(1-p_b)^N_b" in w for w in _manifest(out)["warnings"])

    def test_se_curve_adaptive_needs_records(self, tmp_path):
        code = main(["se-curve", "--m", "3", "--snr", "12", "--mcs", "1", "--out", str(tmp_path / "se.csv")])
        assert code == 2


class TestOptimize:
    """Test cases for the optimize command."""

    def test_stores_designs(self, tmp_path, capsys):
        store_path = tmp_path / "lut.json"
        code = main([
            "optimize", "--m", "2", "--snr", "20", "--mcs", "1", "--store", str(store_path),
            "--swarm-size", "2", "--iterations", "1", "--seed", "7",
        ])

        assert code == 0
        (record,) = JsonLutStore(store_path).records()
        assert record.key == (2, 20.0, 1)
        assert record.provenance.endswith("seed=7")
        manifest = _manifest(store_path)
        assert manifest["config"]["pso"]["swarm_size"] == 2
        assert "snr_db=20.0" in capsys.readouterr().out

    def test_default_grid_from_settings(self, tmp_path, mocker):
        mocker.patch.object(settings, "LUT_SNR_MIN_DB", 20.0)
        mocker.patch.object(settings, "LUT_SNR_MAX_DB", 20.0)
        store_path = tmp_path / "lut.json"
        code = main([
            "optimize", "--m", "2", "--mcs", "1", "--store", str(store_path),
            "--swarm-size", "2", "--iterations", "1",
        ])

        assert code == 0
        assert [r.key for r in JsonLutStore(store_path).records()] == [(2, 20.0, 1)]
        assert _manifest(store_path)["config"]["snr_grid_db"] == [20.0]


class TestLatency:
    """Test cases for the latency command."""

    def test_writes_cells_and_flags_unattained(self, tmp_path, mocker):
        cells = [
            LatencyCell(tau=5, tau_bits=10, target_ber=1e-4, required_snr_db=14.0, attained=True),
            LatencyCell(tau=10, tau_bits=20, target_ber=1e-4, required_snr_db=None, attained=False),
        ]
        sweep = mocker.patch("constellation_designer.main.latency_sweep", return_value=cells)
        out = tmp_path / "latency.csv"

        code = main([
            "latency", "--m", "2", "--mcs", "1", "--tau", "5,10", "--target-ber", "1e-4", "--out", str(out),
        ])

        assert code == 0
        assert sweep.call_args.kwargs["taus"] == [5, 10]
        rows = read_rows(out)
        assert rows[0]["required_snr_db"] == "14.0"
        assert rows[1]["required_snr_db"] == ""
        assert rows[1]["attained"] == "false"
        assert len(_manifest(out)["warnings"]) == 1

    def test_window_too_short(self, tmp_path):
        code = main([
            "latency", "--m", "2", "--mcs", "1", "--tau", "2", "--target-ber", "1e-4",
            "--out", str(tmp_path / "latency.csv"),
        ])
        assert code == 2


class TestVerifyFixtures:
    """Test cases for the verify-fixtures command."""

    def test_failure_exit_code(self, mocker, capsys):
        mocker.patch(
            "constellation_designer.main.verify_fixtures",
            return_value=FixtureReport(errors=["bad record"], notes=["a note"], checked=1),
        )
        assert main(["verify-fixtures"]) == 3
        output = capsys.readouterr().out
        assert "note: a note" in output
        assert "FAIL: bad record" in output

    def test_success(self, mocker, capsys):
        mocker.patch(
            "constellation_designer.main.verify_fixtures",
            return_value=FixtureReport(checked=5),
        )
        assert main(["verify-fixtures"]) == 0
        assert "ok: 5 constellation(s) verified" in capsys.readouterr().out
