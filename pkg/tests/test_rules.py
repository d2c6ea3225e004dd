from __future__ import annotations

import pytest

from gsnlint.findings import Severity
from gsnlint.model import ElementKind, GsnElement, GsnModule, link_model
from gsnlint.parser import load_model
from gsnlint.rules import (
    CATALOG,
    PreconditionError,
    UnknownRuleError,
    check_requirements,
    evaluate,
    make_profile,
)
from gsnlint.scaffold import scaffold_reference_model

from conftest import FIXTURES
from mutations import MUTATIONS, mutate


def _errors(findings):
    return sorted({f.rule for f in findings if f.severity is Severity.ERROR})


def _warnings(findings):
    return sorted({f.rule for f in findings if f.severity is Severity.WARNING})


class TestCatalog:
    def test_all_expected_rules_present(self):
        expected = {f"R{i}" for i in range(1, 11)}
        expected |= {"ST1", "D1", "D2", "TL1", "EV1"}
        expected |= {f"WF{i}" for i in range(1, 10)}
        assert set(CATALOG) == expected

    def test_descriptor_fields_populated(self):
        for rule_id, desc in CATALOG.items():
            assert desc.id == rule_id
            assert desc.title and desc.description
            assert desc.default_severity in Severity

    def test_profiles_partition_sensibly(self):
        core = make_profile("core")
        inst = make_profile("instantiation")
        wf = make_profile("gsn-wf")
        everything = make_profile("all")
        assert set(core.enabled_rules) == {f"R{i}" for i in range(1, 11)}
        assert set(inst.enabled_rules) == {"ST1", "D1", "D2", "TL1", "EV1"}
        assert set(wf.enabled_rules) == {f"WF{i}" for i in range(1, 10)}
        assert set(everything.enabled_rules) == set(CATALOG)

    def test_unknown_profile_and_rule(self):
        with pytest.raises(UnknownRuleError):
            make_profile("nope")
        with pytest.raises(UnknownRuleError):
            make_profile("core", severity_overrides={"R99": Severity.INFO})


class TestEmptyModel:
    def test_single_goal_model_fails_exactly_r1_r5_r9_r10(self):
        model = link_model("empty", modules=[GsnModule("m", [
            GsnElement("G1", ElementKind.GOAL, "Top claim", undeveloped=True),
        ])])
        findings = check_requirements(model, make_profile("core"))
        assert _errors(findings) == ["R1", "R10", "R5", "R9"]


class TestScaffold:
    def test_reference_model_is_fully_clean(self):
        model = scaffold_reference_model()
        findings = evaluate(model, make_profile("all"))
        assert findings == []

    def test_without_samples_only_vacuity_warnings(self):
        model, diags = load_model([FIXTURES / "29-scaffold-nosamples.sac.yaml"])
        assert model is not None, diags
        findings = evaluate(model, make_profile("all"))
        assert _errors(findings) == []
        assert _warnings(findings) == ["D1", "R3", "R4", "R6"]


class TestMutations:
    @pytest.mark.parametrize("mutation", MUTATIONS, ids=lambda m: m.rule)
    def test_single_edit_triggers_its_rule(self, mutation, reference_model):
        mutated = mutate(reference_model, mutation)
        findings = evaluate(mutated, make_profile("all"))
        hits = [f for f in findings if f.rule == mutation.rule]
        assert hits, mutation.description
        assert any(f.severity is mutation.severity for f in hits)

    @pytest.mark.parametrize("mutation", MUTATIONS, ids=lambda m: m.rule)
    def test_no_collateral_errors(self, mutation, reference_model):
        mutated = mutate(reference_model, mutation)
        findings = evaluate(mutated, make_profile("all"))
        extra = [f for f in findings
                 if f.severity is Severity.ERROR and f.rule != mutation.rule]
        assert extra == [], mutation.description


class TestSeverityOverrides:
    def test_demote_error_to_warning(self):
        model = link_model("empty", modules=[GsnModule("m", [
            GsnElement("G1", ElementKind.GOAL, "Top claim", undeveloped=True),
        ])])
        profile = make_profile("core", severity_overrides={"R1": Severity.WARNING})
        findings = check_requirements(model, profile)
        assert "R1" not in _errors(findings)
        assert "R1" in _warnings(findings)

    def test_promote_info_to_error(self, reference_model):
        base = mutate(reference_model,
                      next(m for m in MUTATIONS if m.rule == "TL1"))
        profile = make_profile("all", severity_overrides={"TL1": Severity.ERROR})
        findings = evaluate(base, profile)
        assert "TL1" in _errors(findings)


class TestIllFormedInput:
    def _broken_model(self):
        return link_model("broken", modules=[GsnModule("m", [
            GsnElement("SN1", ElementKind.SOLUTION, "ev",
                       supported_by=("G1",)),
            GsnElement("G1", ElementKind.GOAL, "claim"),
        ])], fragmentary=True)

    def test_check_requirements_refuses(self):
        with pytest.raises(PreconditionError):
            check_requirements(self._broken_model(), make_profile("core"))

    def test_evaluate_reports_wf_instead(self):
        findings = evaluate(self._broken_model(), make_profile("core"))
        assert _errors(findings) == ["WF4"] or "WF5" in _errors(findings)
        assert not any(f.rule.startswith("R") for f in findings)


class TestFindingShape:
    def test_findings_sorted_and_located(self, reference_model):
        mutated = mutate(reference_model,
                         next(m for m in MUTATIONS if m.rule == "R3"))
        findings = evaluate(mutated, make_profile("all"))
        assert findings == sorted(
            findings, key=lambda f: (f.rule, f.elements, f.message))
        for f in findings:
            assert f.message
            assert isinstance(f.elements, tuple)
