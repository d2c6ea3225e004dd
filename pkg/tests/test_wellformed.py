from __future__ import annotations

import itertools

import pytest

from gsnlint.findings import Severity
from gsnlint.model import (
    CONTEXTUAL_KINDS,
    ElementKind,
    GsnElement,
    GsnModule,
    GsnModel,
)
from gsnlint.parser import load_model
from gsnlint.wellformed import LEGAL_SUPPORT_TARGETS, check_wellformed

from conftest import FIXTURES
from genmodels import random_model


def _findings_for(name):
    model, diags = load_model([FIXTURES / name])
    assert model is not None, diags
    return check_wellformed(model)


def _rules(findings, severity=None):
    return {f.rule for f in findings
            if severity is None or f.severity is severity}


class TestCleanModels:
    @pytest.mark.parametrize("name", [
        "01-minimal.sac.yaml", "03-chain.sac.yaml", "04-contextual.sac.yaml",
        "05-diamond-types.sac.yaml", "06-multi-module.sac.yaml",
        "27-deep-nesting.sac.yaml", "28-scaffold-default.sac.yaml",
    ])
    def test_no_findings(self, name):
        assert _findings_for(name) == []

    def test_random_generated_models_are_clean(self):
        for seed in range(40):
            findings = check_wellformed(random_model(seed))
            assert findings == [], (seed, findings)


class TestIndividualRules:
    @pytest.mark.parametrize("name,rule", [
        ("11-wf4-goal-context.sac.yaml", "WF4"),
        ("12-wf4-strategy-strategy.sac.yaml", "WF4"),
        ("13-wf4-solution-parent.sac.yaml", "WF4"),
        ("14-wf5-solution-context.sac.yaml", "WF5"),
        ("15-wf6-goal-target.sac.yaml", "WF6"),
        ("16-wf6-context-supported.sac.yaml", "WF6"),
        ("18-wf8-undeveloped-child.sac.yaml", "WF8"),
        ("20-wf9-unknown-artifact.sac.yaml", "WF9"),
    ])
    def test_expected_error(self, name, rule):
        findings = _findings_for(name)
        assert rule in _rules(findings, Severity.ERROR), findings

    def test_multi_root_is_a_warning(self):
        findings = _findings_for("17-wf7-multi-root.sac.yaml")
        assert "WF7" in _rules(findings, Severity.WARNING)
        assert _rules(findings, Severity.ERROR) == set()

    def test_misplaced_evidence_artifact_is_a_warning(self):
        findings = _findings_for("19-wf9-evidence-on-goal.sac.yaml")
        assert "WF9" in _rules(findings, Severity.WARNING)

    def test_fragmentary_model_skips_global_root_check(self):
        findings = _findings_for("23-fragmentary.sac.yaml")
        assert "WF7" not in _rules(findings)

    def test_findings_name_offending_elements(self):
        findings = _findings_for("14-wf5-solution-context.sac.yaml")
        wf5 = [f for f in findings if f.rule == "WF5"]
        assert wf5 and all(f.elements for f in wf5)


def _pair_model(parent_kind, child_kind):
    """Two-element model exercising a single supported_by edge."""
    parent = GsnElement("E1", parent_kind, "parent", supported_by=("E2",))
    child = GsnElement("E2", child_kind, "child")
    module = GsnModule("m", [parent, child])
    return GsnModel("pair", "1", (module,), fragmentary=True)


class TestSupportPairEnumeration:
    def test_exhaustive_kind_pairs(self):
        # Oracle: the legality table itself, spelled out pair by pair.
        legal = {
            (ElementKind.GOAL, ElementKind.GOAL),
            (ElementKind.GOAL, ElementKind.STRATEGY),
            (ElementKind.GOAL, ElementKind.SOLUTION),
            (ElementKind.STRATEGY, ElementKind.GOAL),
            (ElementKind.STRATEGY, ElementKind.SOLUTION),
        }
        for parent, child in itertools.product(ElementKind, ElementKind):
            findings = check_wellformed(_pair_model(parent, child))
            wf4 = [f for f in findings if f.rule == "WF4"
                   and f.severity is Severity.ERROR]
            if (parent, child) in legal:
                assert not wf4, (parent, child)
            else:
                assert wf4, (parent, child)
            if child in CONTEXTUAL_KINDS:
                # A contextual element on a support edge also breaks WF6.
                assert "WF6" in _rules(findings, Severity.ERROR)

    def test_table_matches_legal_constant(self):
        flattened = {(p, c) for p, cs in LEGAL_SUPPORT_TARGETS.items()
                     for c in cs}
        assert flattened == {
            (ElementKind.GOAL, ElementKind.GOAL),
            (ElementKind.GOAL, ElementKind.STRATEGY),
            (ElementKind.GOAL, ElementKind.SOLUTION),
            (ElementKind.STRATEGY, ElementKind.GOAL),
            (ElementKind.STRATEGY, ElementKind.SOLUTION),
        }
