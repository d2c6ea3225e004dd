from __future__ import annotations

import pytest

from gsnlint.model import ArgumentType, ElementKind, models_equal
from gsnlint.parser import load_model, parse_model, serialize_model

from conftest import FIXTURES, bad_fixture_paths, good_fixture_groups


MINIMAL = """\
model:
  id: demo
  version: "1.0"
modules:
  - id: main
    elements:
      - id: G1
        kind: goal
        text: The system is safe
        supported_by: [SN1]
      - id: SN1
        kind: solution
        text: Test evidence
"""


def parse_text(text, lenient=False):
    return parse_model([("inline.sac.yaml", text)], lenient=lenient)


class TestParseGood:
    def test_minimal_document(self):
        model, diags = parse_text(MINIMAL)
        assert diags == []
        assert model.id == "demo"
        assert model.version == "1.0"
        assert model.resolve("G1").kind is ElementKind.GOAL
        assert model.resolve("SN1").kind is ElementKind.SOLUTION

    def test_all_good_fixtures_parse_without_errors(self):
        for name, paths in good_fixture_groups():
            model, diags = load_model(paths)
            errors = [d for d in diags if d.severity.value == "error"]
            assert model is not None, (name, errors)
            assert errors == [], name

    def test_argument_type_and_roles_parsed(self):
        model, _ = load_model([FIXTURES / "10-roles.sac.yaml"])
        typed = [e for e in model.iter_elements() if e.argument_type]
        assert typed, "fixture should carry argument_type tags"
        assert all(isinstance(e.argument_type, ArgumentType) for e in typed)

    def test_registries_parsed(self):
        model, _ = load_model([FIXTURES / "07-registries.sac.yaml"])
        assert model.registries.hazards
        assert model.registries.hazards[0].id

    def test_multi_document_merge(self):
        group = [FIXTURES / "30a-scaffold-split-main.sac.yaml",
                 FIXTURES / "30b-scaffold-split-registries.sac.yaml"]
        model, diags = load_model(group)
        assert model is not None
        assert model.registries.hazards


class TestParseErrors:
    def test_bad_fixtures_yield_no_model_and_an_error(self):
        for path in bad_fixture_paths():
            model, diags = load_model([path])
            assert model is None, path
            assert any(d.severity.value == "error" for d in diags), path

    @pytest.mark.parametrize("name,code", [
        ("cycle.sac.yaml", "cycle"),
        ("duplicate-id.sac.yaml", "duplicate-id"),
        ("unresolved-ref.sac.yaml", "unresolved-ref"),
        ("unknown-kind.sac.yaml", "unknown-enum"),
        ("syntax.sac.yaml", "syntax"),
        ("no-header.sac.yaml", "model-header"),
        ("bad-acp.sac.yaml", "invalid-acp"),
    ])
    def test_error_codes(self, name, code):
        _, diags = load_model([FIXTURES / "bad" / name])
        assert any(d.code == code for d in diags), (name, [d.code for d in diags])

    def test_diagnostics_carry_positions(self):
        _, diags = load_model([FIXTURES / "bad" / "duplicate-id.sac.yaml"])
        flagged = [d for d in diags if d.code == "duplicate-id"]
        assert flagged and all(d.line and d.line > 0 for d in flagged)
        assert "duplicate-id.sac.yaml" in str(flagged[0].file)

    def test_unknown_key_strict_vs_lenient(self):
        text = MINIMAL + "      - id: X1\n        kind: goal\n" \
            "        text: extra\n        surprise: true\n"
        model, diags = parse_text(text)
        assert model is None
        assert any(d.code == "unknown-key" and d.severity.value == "error"
                   for d in diags)
        model, diags = parse_text(text, lenient=True)
        assert model is not None
        assert any(d.code == "unknown-key" and d.severity.value == "warning"
                   for d in diags)

    def test_unknown_kind_message_names_offender(self):
        _, diags = load_model([FIXTURES / "bad" / "unknown-kind.sac.yaml"])
        joined = " ".join(d.message for d in diags)
        assert "goalx" in joined

    def test_two_model_headers_rejected(self):
        text = MINIMAL + "\n---\n" + MINIMAL
        model, diags = parse_model([("a.sac.yaml", text)])
        assert model is None
        assert any(d.code == "model-header" for d in diags)


class TestRoundTrip:
    def test_serialize_reparse_structural_equality(self):
        for name, paths in good_fixture_groups():
            model, _ = load_model(paths)
            text = serialize_model(model)
            reparsed, diags = parse_text(text)
            assert reparsed is not None, (name, diags)
            assert models_equal(model, reparsed), name

    def test_serialization_is_idempotent(self):
        for name, paths in good_fixture_groups():
            model, _ = load_model(paths)
            once = serialize_model(model)
            again, _ = parse_text(once)
            assert serialize_model(again) == once, name
