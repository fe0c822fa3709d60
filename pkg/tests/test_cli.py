"""Tests for the command line."""

import json
from pathlib import Path

import jsonschema
import pytest
import yaml
from click.testing import CliRunner

from src import __version__
from src.cli.main import EXIT_FAILED, EXIT_INPUT, EXIT_OK, cli
from src.config import OrbifoldConfig
from src.core.models import CheckResult, Issue, MasseyReport, VerificationReport

ROOT = Path(__file__).resolve().parent.parent

FAST_ENV = {
    "NILG2_LATTICE_TRIALS": "100",
    "NILG2_REDUCTION_TRIALS": "20",
    "NILG2_MASSEY_ROUNDS": "1",
    "NILG2_INVOLUTION_PAIRS": "20",
    "NILG2_GRID_STEPS": "3",
    "NILG2_LOG_LEVEL": "ERROR",
}


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(cli, list(args), env=FAST_ENV)

    return invoke


def _json(result):
    return json.loads(result.output)


def _schema(name):
    return json.loads((ROOT / "docs" / name).read_text(encoding="utf-8"))


class TestLie:
    def test_check(self, run):
        result = run("lie", "check")
        assert result.exit_code == EXIT_OK
        assert "[PASS] lie-check" in result.output

    def test_betti_json(self, run):
        result = run("--format", "json", "lie", "--salamon", "(0,0,0)", "betti")
        assert result.exit_code == EXIT_OK
        payload = _json(result)
        assert payload["details"]["betti"] == [1, 3, 3, 1]
        assert payload["details"]["euler_characteristic"] == 0

    def test_basis_degree(self, run):
        result = run("--format", "json", "lie", "--salamon", "(0,0,-12)", "basis", "--degree", "1")
        assert result.exit_code == EXIT_OK
        listing = _json(result)["details"]["classes"]
        assert listing[0]["dimension"] == 2

    def test_d_squared_failure(self, run):
        result = run("lie", "--salamon", "(0,0,0,12,34)", "check")
        assert result.exit_code == EXIT_FAILED
        assert "D_SQUARED" in result.output

    def test_malformed_salamon(self, run):
        result = run("lie", "--salamon", "(0,0,1x)", "betti")
        assert result.exit_code == EXIT_INPUT


class TestNilgroup:
    def test_product(self, run):
        result = run("--format", "json", "nilgroup", "product", "0,0,0,0,0,1,0", "1,0,0,0,0,0,0")
        assert result.exit_code == EXIT_OK
        payload = _json(result)
        assert payload["details"]["product"]["coordinates"] == ["1", "0", "0", "0", "0", "1", "-3"]
        assert [issue["code"] for issue in payload["issues"]] == ["FORMULA_MISMATCH"]

    def test_reduce(self, run):
        result = run("--format", "json", "nilgroup", "reduce", "3/2,0,0,0,0,0,0")
        assert result.exit_code == EXIT_OK
        details = _json(result)["details"]
        assert details["gamma"]["coordinates"] == ["1", "0", "0", "0", "0", "0", "0"]
        assert details["d"]["coordinates"] == ["1/2", "0", "0", "0", "0", "0", "0"]

    def test_wrong_dimension(self, run):
        assert run("nilgroup", "product", "1,0", "0,1").exit_code == EXIT_INPUT

    def test_fixed_grid(self, run):
        result = run("--format", "json", "nilgroup", "fixed", "--grid", "3")
        assert result.exit_code == EXIT_OK
        details = _json(result)["details"]
        assert details["grid_points"] == 81
        assert details["grid_isotropic"] == ["(0, 0, 0, 0, 0, 0, 0)"]


STANDARD_FORM = "e127 + e347 + e567 + e135 - e236 - e146 - e245"


class TestG2:
    def test_form_from_file(self, run, tmp_path):
        path = tmp_path / "phi.txt"
        path.write_text(STANDARD_FORM + "\n")
        result = run("--format", "json", "g2", "verify", "--form", str(path))
        assert result.exit_code == EXIT_OK
        details = _json(result)["details"]
        assert "e127" in details["phi"]
        assert abs(details["sign"]) == 1

    def test_missing_form_file(self, run, tmp_path):
        result = run("g2", "verify", "--form", str(tmp_path / "absent.txt"))
        assert result.exit_code == EXIT_INPUT

    def test_inline_form(self, run):
        result = run("g2", "verify", "--form-text", "e123")
        assert result.exit_code == EXIT_FAILED
        assert "NOT_G2" in result.output

    def test_file_and_inline_exclude_each_other(self, run, tmp_path):
        path = tmp_path / "phi.txt"
        path.write_text(STANDARD_FORM)
        result = run("g2", "verify", "--form", str(path), "--form-text", STANDARD_FORM)
        assert result.exit_code == EXIT_INPUT

    def test_malformed_inline_form(self, run):
        assert run("g2", "verify", "--form-text", "e1 + + e2").exit_code == EXIT_INPUT


class TestMassey:
    def test_json_carries_the_massey_report(self, run):
        result = run("--format", "json", "massey")
        assert result.exit_code == EXIT_OK
        details = _json(result)["details"]
        fields = {key: details[key] for key in MasseyReport.model_fields}
        report = MasseyReport.model_validate(fields)
        assert report.classes[0] == report.classes[2]
        assert report.degree == 3
        assert report.defined
        assert report.representative is not None


class TestVerifyAll:
    def test_only(self, run):
        result = run("--format", "json", "verify-all", "--only", "lie-algebra", "--only", "g2-form")
        assert result.exit_code == EXIT_OK
        payload = _json(result)
        assert [c["name"] for c in payload["checks"]] == ["lie-algebra", "g2-form"]
        assert payload["tool"] == "nilg2"

    def test_json_is_deterministic(self, run):
        args = ("--format", "json", "--seed", "3", "verify-all", "--only", "massey-orbifold")
        first, second = run(*args), run(*args)
        assert first.exit_code == EXIT_OK
        assert first.output == second.output

    def test_unknown_check(self, run):
        assert run("verify-all", "--only", "nope").exit_code == EXIT_INPUT

    def test_json_matches_the_committed_schema(self, run):
        args = ("--only", "lie-algebra", "--only", "massey-orbifold", "--only", "isotropy")
        result = run("--format", "json", "verify-all", *args)
        assert result.exit_code == EXIT_OK
        jsonschema.validate(instance=_json(result), schema=_schema("report.schema.json"))


class TestSchemas:
    def test_report_schema_tracks_the_models(self):
        schema = _schema("report.schema.json")
        assert set(schema["properties"]) == set(VerificationReport.model_fields)
        assert set(schema["$defs"]["CheckResult"]["properties"]) == set(CheckResult.model_fields)
        assert set(schema["$defs"]["Issue"]["properties"]) == set(Issue.model_fields)

    def test_orbifold_schema_tracks_the_model(self):
        schema = _schema("orbifold.schema.json")
        assert set(schema["properties"]) == set(OrbifoldConfig.model_fields)
        jsonschema.validate(instance=OrbifoldConfig().model_dump(), schema=schema)

    def test_shipped_configuration_is_valid(self):
        data = yaml.safe_load((ROOT / "config" / "orbifold.yaml").read_text(encoding="utf-8"))
        jsonschema.validate(instance=data, schema=_schema("orbifold.schema.json"))

    def test_schema_rejects_a_wrong_type(self):
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(
                instance={"involution_signs": "minus"}, schema=_schema("orbifold.schema.json")
            )


class TestInput:
    def test_missing_input_file(self, run, tmp_path):
        result = run("--input", str(tmp_path / "absent.yaml"), "lie", "check")
        assert result.exit_code == EXIT_INPUT

    def test_invalid_configuration(self, run, tmp_path):
        path = tmp_path / "model.yaml"
        path.write_text("involution_signs: [1, 2, 1, 1, 1, 1, 1]\n")
        assert run("--input", str(path), "lie", "check").exit_code == EXIT_INPUT

    def test_configured_algebra(self, run, tmp_path):
        path = tmp_path / "model.yaml"
        path.write_text('salamon: "(0,0,0,12,34)"\n')
        result = run("--input", str(path), "lie", "check")
        assert result.exit_code == EXIT_FAILED

    def test_version(self, run):
        result = run("--version")
        assert result.exit_code == EXIT_OK
        assert __version__ in result.output
