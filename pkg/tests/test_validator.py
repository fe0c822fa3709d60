"""Tests for the verification pipeline."""

import pytest

from src.algebra.notation import NotationError
from src.config import OrbifoldConfig, Settings
from src.core.models import CheckStatus, MasseyReport
from src.verification.validator import OrbifoldVerifier


@pytest.fixture(scope="module")
def report():
    settings = Settings(
        seed=7,
        lattice_trials=200,
        reduction_trials=50,
        massey_rounds=3,
        grid_steps=4,
        involution_pairs=40,
    )
    return OrbifoldVerifier(OrbifoldConfig(), settings).run()


def _codes(result):
    return {issue.code for issue in result.issues}


class TestFullRun:
    def test_every_check_passes(self, report):
        assert report.failed_checks() == []
        assert report.passed

    def test_check_order(self, report):
        assert [c.name for c in report.checks][:3] == [
            "lie-algebra",
            "invariant-cohomology",
            "non-formality-spaces",
        ]
        assert report.checks[-1].name == "duality"
        assert len(report.checks) == 13

    def test_descriptions_are_filled_in(self, report):
        assert all(check.description for check in report.checks)

    def test_listed_discrepancies_are_reported(self, report):
        by_name = {check.name: check for check in report.checks}
        assert "LITERAL_UNDEFINED" in _codes(by_name["massey-orbifold"])
        assert "B3_SIGN" in _codes(by_name["non-formality-spaces"])
        assert "H3_REPRESENTATIVE_REJECTED" in _codes(by_name["invariant-cohomology"])
        assert "COMMUTATOR_CENTRE" in _codes(by_name["nilgroup"])
        assert "FORMULA_CENTRAL" in _codes(by_name["closed-formula"])
        assert "BRACKET_FACTOR" in _codes(by_name["component-cohomology"])

    def test_details(self, report):
        by_name = {check.name: check for check in report.checks}
        assert by_name["invariant-cohomology"].details["betti"] == [1, 1, 3, 8, 8, 3, 1, 1]
        assert by_name["isotropy"].details["grid_points"] == 256
        assert len(by_name["isotropy"].details["components"]) == 16
        assert by_name["resolution-ring"].details["dimension"] == 122
        assert by_name["g2-involution"].details["fixed_generators"] == [3, 4, 7]

    def test_involution_is_an_automorphism(self, report):
        nilgroup = next(check for check in report.checks if check.name == "nilgroup")
        assert nilgroup.details["involution_pairs"] == 40
        assert not _codes(nilgroup) & {"INVOLUTION_HOMOMORPHISM", "INVOLUTION_ORDER"}

    def test_fixed_subgroup_sample_keeps_witnesses(self, report):
        isotropy = next(check for check in report.checks if check.name == "isotropy")
        assert isotropy.details["sample_agrees"] is True
        assert "COMPONENT_SAMPLE" not in _codes(isotropy)

    def test_massey_details_follow_the_report_model(self, report):
        massey = next(check for check in report.checks if check.name == "massey-orbifold")
        fields = {key: massey.details[key] for key in MasseyReport.model_fields}
        parsed = MasseyReport.model_validate(fields)
        assert parsed.degree == 3
        assert parsed.defined and parsed.trivial is False
        assert parsed.defining_system is not None and len(parsed.defining_system) == 2
        assert massey.details["randomised_rounds"] == 3


class TestSelection:
    def test_only(self, fast_settings):
        verifier = OrbifoldVerifier(OrbifoldConfig(), fast_settings)
        result = verifier.run(only=["lie-algebra", "duality"])
        assert [c.name for c in result.checks] == ["lie-algebra", "duality"]
        assert result.seed == 7

    def test_unknown_check(self, fast_settings):
        with pytest.raises(KeyError):
            OrbifoldVerifier(OrbifoldConfig(), fast_settings).run_check("nope")


class TestPerturbations:
    def test_dropped_term_is_not_closed(self, fast_settings):
        config = OrbifoldConfig()
        config.g2_form = config.g2_form.replace(" + e347", "")
        result = OrbifoldVerifier(config, fast_settings).run_check("g2-form")
        assert result.status == CheckStatus.FAILED
        assert "NOT_CLOSED" in _codes(result)

    def test_wrong_involution(self, fast_settings):
        config = OrbifoldConfig(involution_signs=[1, -1, 1, 1, -1, -1, 1])
        result = OrbifoldVerifier(config, fast_settings).run_check("invariant-cohomology")
        assert not result.passed
        assert _codes(result) == {"EXCEPTION"}

    def test_wrong_expected_betti(self, fast_settings):
        config = OrbifoldConfig()
        config.expected.betti_invariant = [1, 1, 3, 8, 8, 3, 1, 2]
        result = OrbifoldVerifier(config, fast_settings).run_check("invariant-cohomology")
        assert "BETTI" in _codes(result)

    def test_malformed_notation(self, fast_settings):
        with pytest.raises(NotationError):
            OrbifoldVerifier(OrbifoldConfig(salamon="(0,0,1x)"), fast_settings)

    def test_invalid_signs_are_rejected_by_the_model(self):
        with pytest.raises(ValueError):
            OrbifoldConfig(involution_signs=[1, 2, 1, 1, 1, 1, 1])

    def test_component_needs_three_labels(self):
        with pytest.raises(ValueError):
            OrbifoldConfig(resolution={"component_labels": [3, 4]})
