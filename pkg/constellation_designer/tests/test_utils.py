"""
Unit tests for the utils package.

Tests cover:
- SNR grid parsing
- Energy and labeling validators
- Fixture verification under the store's Chernoff distance divisor
- Default design grid from settings
- Counter-based random streams and threshold bisection
- Curve files and run manifests
"""

import json

import pytest

from constellation_designer import __version__
from constellation_designer.config import settings
from constellation_designer.core.errors import ConfigurationError
from constellation_designer.services.lut_store import JsonLutStore
from constellation_designer.utils.manifest import (
    build_manifest,
    file_digest,
    manifest_path,
    write_manifest,
)
from constellation_designer.utils.output import format_value, read_rows, write_rows
from constellation_designer.utils.rng import SIMULATION_STREAM, SWARM_INIT_STREAM, stream
from constellation_designer.utils.search import bisect_threshold
from constellation_designer.utils.validation import (
    default_design_grid,
    parse_snr_grid,
    validate_energy,
    validate_labeling,
    verify_fixtures,
)


class TestParseSnrGrid:
    """Test cases for parse_snr_grid."""

    @pytest.mark.parametrize(
        "spec, expected",
        [
            ("12:18:6", [12.0, 18.0]),
            ("0:1:0.25", [0.0, 0.25, 0.5, 0.75, 1.0]),
            ("5:6:2", [5.0]),
            ("8, 10,12", [8.0, 10.0, 12.0]),
            ("7.5", [7.5]),
        ],
    )
    def test_valid(self, spec, expected):
        assert parse_snr_grid(spec) == expected

    def test_default_design_grid(self, mocker):
        assert default_design_grid() == [12.0, 14.0, 16.0, 18.0]
        mocker.patch.object(settings, "LUT_SNR_MAX_DB", 13.0)
        mocker.patch.object(settings, "LUT_GRID_STEP_DB", 0.5)
        assert default_design_grid() == [12.0, 12.5, 13.0]

    def test_float_steps_do_not_drift(self):
        grid = parse_snr_grid("0:3:0.1")
        assert len(grid) == 31
        assert grid[-1] == 3.0

    @pytest.mark.parametrize("spec", ["1:2", "1:2:0", "5:1:1", "a,b", "1:x:1"])
    def test_invalid(self, spec):
        with pytest.raises(ConfigurationError):
            parse_snr_grid(spec)


class TestValidators:
    """Test cases for validate_energy and validate_labeling."""

    def test_energy_within_slack(self):
        assert validate_energy([1.01, -1.01], slack=0.03) == []
        assert len(validate_energy([1.01, -1.01])) == 1

    def test_duplicate_points(self):
        errors = validate_labeling([1, 1, -1, 1j])
        assert errors == ["two labels map to the same point"]

    def test_point_count(self):
        assert len(validate_labeling([1, -1, 1j])) == 1


class TestVerifyFixtures:
    """Test cases for verify_fixtures."""

    def test_bundled_store_passes(self):
        report = verify_fixtures()
        assert report.checked == 5
        assert report.errors == []
        assert report.ok

    def test_notes_name_declared_divisor(self):
        notes = verify_fixtures().notes
        assert any("divisor 1;" in note for note in notes)

    def test_bundled_designs_fail_under_another_divisor(self, write_document):
        document = json.loads(settings.fixture_store_path.read_text(encoding="utf-8"))
        document["chernoff_distance_divisor"] = 4.0
        report = verify_fixtures(JsonLutStore(write_document(document), read_only=True))
        assert report.checked == 5
        assert not report.ok
        assert any("not below" in error for error in report.errors)

    def test_notes_flag_rate_and_formula(self):
        notes = verify_fixtures().notes
        assert any(note.startswith("MCS-3") for note in notes)
        assert any("(1-p_b)^N_b" in note for note in notes)

    def test_qam_record_is_not_an_improvement(self, lut_store, make_record):
        lut_store.store(make_record(snr_db=18.0))
        report = verify_fixtures(lut_store)
        assert not report.ok
        assert "not below" in report.errors[0]

    def test_unreadable_store(self, write_document):
        report = verify_fixtures(JsonLutStore(write_document("{broken")))
        assert not report.ok
        assert "unreadable" in report.errors[0]


class TestRngAndSearch:
    """Test cases for random streams and bisection."""

    def test_streams_depend_only_on_key(self):
        assert stream(42, SIMULATION_STREAM, 7).random() == stream(42, SIMULATION_STREAM, 7).random()
        assert stream(42, SIMULATION_STREAM, 7).random() != stream(42, SIMULATION_STREAM, 8).random()
        assert stream(42, SWARM_INIT_STREAM, 7).random() != stream(42, SIMULATION_STREAM, 7).random()

    def test_bisect_threshold(self):
        assert bisect_threshold(lambda x: x >= 3.0, 0.0, 8.0, 0.5) == 3.0
        result = bisect_threshold(lambda x: x >= 2.7, 0.0, 8.0, 0.01)
        assert 2.7 <= result <= 2.71

    def test_bisect_edges(self):
        assert bisect_threshold(lambda x: True, 1.0, 8.0, 0.5) == 1.0
        assert bisect_threshold(lambda x: False, 1.0, 8.0, 0.5) is None


class TestOutputAndManifest:
    """Test cases for curve files and manifests."""

    @pytest.mark.parametrize(
        "value, text",
        [(0.1, "0.1"), (float("inf"), "inf"), (None, ""), (True, "true"), (False, "false"), (3, "3"), ("x", "x")],
    )
    def test_format_value(self, value, text):
        assert format_value(value) == text

    def test_write_and_read_rows(self, tmp_path):
        path = write_rows(tmp_path / "out" / "curve.csv", ["a", "b"], [[1, 0.25], [2, None]])
        assert path.read_text(encoding="utf-8") == "a,b\n1,0.25\n2,\n"
        assert read_rows(path) == [{"a": "1", "b": "0.25"}, {"a": "2", "b": ""}]

    def test_manifest_records_inputs(self, tmp_path):
        source = tmp_path / "input.json"
        source.write_text("{}", encoding="utf-8")
        manifest = build_manifest(
            "bound-curve", {"m": 2}, seed=5, inputs=[source, tmp_path / "missing.json"], warnings=["w"]
        )
        assert manifest.tool_version == __version__
        assert manifest.input_digests == {str(source): file_digest(source)}
        assert manifest.warnings == ["w"]
        assert manifest.seed == 5

    def test_manifest_written_next_to_output(self, tmp_path):
        output = tmp_path / "curve.csv"
        path = write_manifest(build_manifest("se-curve", {"m": "awgn"}), output)
        assert path == manifest_path(output) == tmp_path / "curve.csv.manifest.json"
        data = json.loads(path.read_text(encoding="utf-8"))
        assert data["command"] == "se-curve"
        assert data["config"] == {"m": "awgn"}
