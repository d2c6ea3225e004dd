"""Requirement rules for safety assurance argumentations.

The "core" profile holds the ten structural requirements on the argument
(R1-R10); "instantiation" holds checks on the reference structure (ST1,
D1, D2, TL1, EV1); "gsn-wf" holds notation legality (see wellformed.py).
Every rule is a pure function of the linked model and its registries and
judges declared structure and annotations only, never prose meaning.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Callable, Optional

from .findings import Finding, Severity, sort_findings
from .model import (
    ArgumentType,
    ArtifactRole,
    ElementKind,
    GsnModel,
    RacLevel,
    RoleTag,
    HazardStatus,
)
from .wellformed import check_wellformed

TOP_CLAIM_PHRASE = "absence of unreasonable risk"


@dataclass(frozen=True)
class RuleDescriptor:
    id: str
    title: str
    default_severity: Severity
    anchor: str
    description: str


CATALOG: dict[str, RuleDescriptor] = {d.id: d for d in [
    RuleDescriptor(
        "R1", "Risk argument present and rooted", Severity.ERROR,
        '§III.A, "risk argument that argues over risk reduction"',
        "A non-empty risk argument exists and its topmost element is reachable "
        "from the global root goal."),
    RuleDescriptor(
        "R2", "Confidence argument linked via assurance claim points", Severity.ERROR,
        '§III.A R2, "why elements or their assertion in the risk argument should be trusted"',
        "Every assurance claim point links a goal of the confidence argument; "
        "a risk argument without any assurance claim point is flagged."),
    RuleDescriptor(
        "R3", "Regulatory requirements covered by the compliance argument", Severity.ERROR,
        '§III.A R3, "adherence to regulatory requirements"',
        "Each regulatory requirement is traced by a compliance-argument element "
        "that is backed by at least one solution."),
    RuleDescriptor(
        "R4", "Normative requirements covered by the conformance argument", Severity.ERROR,
        '§III.A R4, "adherence to normative requirements"; '
        '§IV.C.1, "rationale for selecting normative documents"',
        "Each normative requirement is traced by a solution-backed conformance-"
        "argument element and carries a selection rationale."),
    RuleDescriptor(
        "R5", "Risk argument splits into product and process arguments", Severity.ERROR,
        '§III.A R5, "risk argument comprising a product argument and a process argument"',
        "Product and process arguments are non-empty and wholly contained in "
        "the risk argument."),
    RuleDescriptor(
        "R6", "Hazards managed by solution-backed measures", Severity.ERROR,
        '§III.A R6, "hazards are managed by adequate measures"',
        "Every hazard is managed and traced by a solution-backed hazard-"
        "management element of the product argument."),
    RuleDescriptor(
        "R7", "Process argument covers the system lifecycle", Severity.ERROR,
        '§III.A R7, "system lifecycle considerations, including operational aspects"; '
        '§IV.C, "post-deployment activities"',
        "The process argument addresses both operation and maintenance."),
    RuleDescriptor(
        "R8", "Process argument establishes a safety culture", Severity.ERROR,
        '§III.A R8, "establishment of a safety culture"',
        "The process argument contains a solution-backed safety-culture element."),
    RuleDescriptor(
        "R9", "Contextualization argument covers all context dimensions", Severity.ERROR,
        '§III.B R9, "contextualization argument addressing relevant context dimensions"',
        "For every declared context dimension a context document is referenced "
        "from the contextualization argument."),
    RuleDescriptor(
        "R10", "Soundness argument over applied methods", Severity.ERROR,
        '§III.B R10, "soundness argument that argues over applied methods"',
        "The soundness argument exists, names an uncertainty method, and, when "
        "assurance claim points are used, argues over their placement."),
    RuleDescriptor(
        "ST1", "Conformance/compliance subordinate to the process argument", Severity.WARNING,
        '§IV.C footnote, "Subordinating the conformity and compliance argument '
        'to the process argument"',
        "Conformance and compliance arguments hang below the process argument."),
    RuleDescriptor(
        "D1", "Risk acceptance criteria defined, evaluated, maintained", Severity.ERROR,
        '§IV.D, "defined in accordance with stakeholder expectations, evaluated '
        'to be met, and be maintained"',
        "Global and scenario-based acceptance criteria exist and each level is "
        "traced by elements defining, evaluating, and maintaining it."),
    RuleDescriptor(
        "D2", "Known and unknown scenarios addressed", Severity.ERROR,
        '§IV.D, "residual risk in known and unknown scenarios"',
        "The product argument argues over both known and unknown scenarios."),
    RuleDescriptor(
        "TL1", "Top-level claim phrasing", Severity.INFO,
        '§IV.A, "absence of unreasonable risk as a favorable top-level claim"',
        f"Advisory: the root claim should contain the phrase '{TOP_CLAIM_PHRASE}'."),
    RuleDescriptor(
        "EV1", "Solutions reference evidence artifacts", Severity.ERROR,
        '§II.A, "documentation associated with evidence and context elements"',
        "Every solution references at least one evidence artifact."),
    RuleDescriptor(
        "WF1", "Acyclic support relation", Severity.ERROR,
        "GSN community standard", "The supported_by relation contains no cycle."),
    RuleDescriptor(
        "WF2", "Unique element identifiers", Severity.ERROR,
        "GSN community standard", "Element ids are unique across all modules."),
    RuleDescriptor(
        "WF3", "References resolve", Severity.ERROR,
        "GSN community standard",
        "All relation and assurance-claim-point references resolve."),
    RuleDescriptor(
        "WF4", "Legal support targets", Severity.ERROR,
        "GSN community standard",
        "Goals are supported by goals, strategies, or solutions; strategies by "
        "goals or solutions; no other kind supports anything."),
    RuleDescriptor(
        "WF5", "Solutions are leaves", Severity.ERROR,
        "GSN community standard", "A solution has no outgoing relations."),
    RuleDescriptor(
        "WF6", "Contextual elements attach via in_context_of", Severity.ERROR,
        "GSN community standard",
        "Contexts, assumptions, and justifications are reached only through "
        "in_context_of relations and are sinks."),
    RuleDescriptor(
        "WF7", "Single root", Severity.WARNING,
        "GSN community standard",
        "Each module, and the model as a whole unless fragmentary, has one root."),
    RuleDescriptor(
        "WF8", "Undeveloped elements are unsupported", Severity.ERROR,
        "GSN community standard",
        "An element marked undeveloped has no supporting children."),
    RuleDescriptor(
        "WF9", "Artifact roles match element kinds", Severity.WARNING,
        "GSN community standard",
        "Evidence artifacts are referenced by solutions, context documents by "
        "contextual elements."),
]}

CORE_RULES = tuple(f"R{i}" for i in range(1, 11))
INSTANTIATION_RULES = ("ST1", "D1", "D2", "TL1", "EV1")
WF_RULES = tuple(f"WF{i}" for i in range(1, 10))


@dataclass
class RuleProfile:
    name: str
    enabled_rules: frozenset[str]
    severity_overrides: dict[str, Severity] = field(default_factory=dict)


_PROFILE_RULES = {
    "core": CORE_RULES,
    "instantiation": INSTANTIATION_RULES,
    "gsn-wf": WF_RULES,
    "all": CORE_RULES + INSTANTIATION_RULES + WF_RULES,
}


class UnknownRuleError(ValueError):
    pass


class PreconditionError(Exception):
    """Requirement checking refused because the model is not well-formed."""

    def __init__(self, wf_findings: list[Finding]):
        self.wf_findings = wf_findings
        errors = [f for f in wf_findings if f.severity is Severity.ERROR]
        super().__init__(
            f"model has {len(errors)} well-formedness error(s); fix those first")


def make_profile(name: str, severity_overrides: Optional[dict[str, Severity]] = None
                 ) -> RuleProfile:
    if name not in _PROFILE_RULES:
        raise UnknownRuleError(f"unknown profile '{name}'")
    overrides = dict(severity_overrides or {})
    for rule in overrides:
        if rule not in CATALOG:
            raise UnknownRuleError(f"unknown rule id '{rule}' in severity overrides")
    return RuleProfile(name, frozenset(_PROFILE_RULES[name]), overrides)


def catalog_as_json(indent: int = 2) -> str:
    """Rule catalog export for documentation tooling."""
    entries = [
        {"id": d.id, "title": d.title, "default_severity": d.default_severity.value,
         "anchor": d.anchor, "description": d.description}
        for d in CATALOG.values()
    ]
    return json.dumps({"rules": entries}, indent=indent)


# -- evaluation context ----------------------------------------------


@dataclass
class _Ctx:
    model: GsnModel

    def subset(self, argument_type: ArgumentType) -> set[str]:
        return self.model.argument_subset(argument_type)

    @cached_property
    def all_acps(self) -> list[tuple[str, "object"]]:
        return [(e.id, acp) for e in self.model.iter_elements() for acp in e.acps]

    def solution_backed(self, element_id: str) -> bool:
        return self.model.has_solution_descendant[element_id]

    def tracing_elements(self, item_id: str, subset: set[str],
                         role: Optional[RoleTag] = None) -> list[str]:
        """Subset members tracing a registry item, optionally role-filtered."""
        out = []
        for eid in subset:
            element = self.model.index[eid]
            if item_id in element.traces and (role is None or role in element.roles):
                out.append(eid)
        return sorted(out)

    def role_members(self, subset: set[str], role: RoleTag) -> list[str]:
        return sorted(eid for eid in subset if role in self.model.index[eid].roles)


def _vacuous(rule: str, registry_name: str) -> Finding:
    return Finding(rule, Severity.WARNING,
                   f"registry '{registry_name}' is empty; rule {rule} passes vacuously")


def _rule_r1(ctx: _Ctx) -> list[Finding]:
    risk = ctx.subset(ArgumentType.RISK)
    if not risk:
        return [Finding("R1", Severity.ERROR, "no risk argument: no element belongs "
                        "to the risk argument")]
    findings = []
    root = ctx.model.root
    if root is not None:
        topmost = sorted(
            m for m in risk
            if not any(p in risk for p in ctx.model.support_parents[m]))
        reachable = {root.id} | ctx.model.descendants(root.id)
        if not any(t in reachable for t in topmost):
            findings.append(Finding(
                "R1", Severity.ERROR,
                f"risk argument is not reachable from the root goal '{root.id}'",
                tuple(topmost)))
    return findings


def _rule_r2(ctx: _Ctx) -> list[Finding]:
    findings = []
    risk = ctx.subset(ArgumentType.RISK)
    if ctx.all_acps:
        confidence = ctx.subset(ArgumentType.CONFIDENCE)
        if not confidence:
            findings.append(Finding(
                "R2", Severity.ERROR,
                "assurance claim points are present but the confidence argument is empty"))
        for owner, acp in ctx.all_acps:
            if acp.confidence_goal not in confidence:
                findings.append(Finding(
                    "R2", Severity.ERROR,
                    f"confidence goal '{acp.confidence_goal}' of the assurance claim "
                    f"point on '{owner}' is not part of the confidence argument",
                    (owner, acp.confidence_goal)))
    risk_acps = [owner for owner, _ in ctx.all_acps if owner in risk]
    if not risk_acps:
        findings.append(Finding(
            "R2", Severity.WARNING,
            "the risk argument carries no assurance claim points"))
    return findings


def _coverage_rule(ctx: _Ctx, rule: str, registry_name: str, items,
                   subset: set[str],
                   extra_reasons: Optional[Callable] = None,
                   role: Optional[RoleTag] = None) -> list[Finding]:
    """One Error per registry item that is untraced, solution-less, or
    failed by extra_reasons; empty registries pass vacuously with a warning."""
    if not items:
        return [_vacuous(rule, registry_name)]
    findings = []
    for item in items:
        tracers = ctx.tracing_elements(item.id, subset, role)
        reasons = []
        if not tracers:
            reasons.append("not traced from the relevant argument")
        elif not any(ctx.solution_backed(t) for t in tracers):
            reasons.append("tracing elements lack supporting solutions")
        if extra_reasons:
            reasons.extend(extra_reasons(item, tracers))
        if reasons:
            findings.append(Finding(
                rule, Severity.ERROR,
                f"{registry_name} item '{item.id}': " + "; ".join(reasons),
                tuple(tracers)))
    return findings


def _rule_r3(ctx: _Ctx) -> list[Finding]:
    return _coverage_rule(
        ctx, "R3", "regulatory_requirements",
        ctx.model.registries.regulatory_requirements,
        ctx.subset(ArgumentType.COMPLIANCE))


def _rule_r4(ctx: _Ctx) -> list[Finding]:
    conformance = ctx.subset(ArgumentType.CONFORMANCE)
    has_rationale_element = bool(
        ctx.role_members(conformance, RoleTag.SELECTION_RATIONALE))

    def rationale_missing(item, tracers):
        if not item.selection_rationale and not has_rationale_element:
            return ["no selection rationale recorded for the normative document"]
        return []

    return _coverage_rule(
        ctx, "R4", "normative_requirements",
        ctx.model.registries.normative_requirements,
        conformance, extra_reasons=rationale_missing)


def _rule_r5(ctx: _Ctx) -> list[Finding]:
    findings = []
    risk = ctx.subset(ArgumentType.RISK)
    # An explicitly re-tagged element leaves the risk subset, so containment
    # means sitting inside the risk argument's scope, not subset inclusion.
    risk_scope = ctx.model.reachable_from(risk)
    for name, argument_type in (("product", ArgumentType.PRODUCT),
                                ("process", ArgumentType.PROCESS)):
        subset = ctx.subset(argument_type)
        if not subset:
            findings.append(Finding(
                "R5", Severity.ERROR, f"the risk argument lacks a {name} argument"))
        elif risk:
            stray = sorted(subset - risk_scope)
            if stray:
                findings.append(Finding(
                    "R5", Severity.ERROR,
                    f"{name} argument is not contained in the risk argument",
                    tuple(stray)))
    return findings


def _rule_r6(ctx: _Ctx) -> list[Finding]:
    hazards = ctx.model.registries.hazards
    if not hazards:
        return [_vacuous("R6", "hazards")]
    product = ctx.subset(ArgumentType.PRODUCT)
    findings = []
    for hazard in hazards:
        tracers = ctx.tracing_elements(hazard.id, product, RoleTag.HAZARD_MANAGEMENT)
        reasons = []
        if hazard.status is HazardStatus.OPEN:
            reasons.append("status is open")
        if not tracers:
            reasons.append("not traced by a hazard-management element of the "
                           "product argument")
        elif not any(ctx.solution_backed(t) for t in tracers):
            reasons.append("hazard-management elements lack supporting solutions")
        if reasons:
            findings.append(Finding(
                "R6", Severity.ERROR,
                f"hazard '{hazard.id}': " + "; ".join(reasons), tuple(tracers)))
    return findings


def _rule_r7(ctx: _Ctx) -> list[Finding]:
    process = ctx.subset(ArgumentType.PROCESS)
    if not process:
        return []  # absence of the process argument is R5's finding
    findings = []
    for role, label in ((RoleTag.LIFECYCLE_OPERATION, "operation"),
                        (RoleTag.LIFECYCLE_MAINTENANCE, "maintenance")):
        if not ctx.role_members(process, role):
            findings.append(Finding(
                "R7", Severity.ERROR,
                f"the process argument does not address lifecycle {label}"))
    return findings


def _rule_r8(ctx: _Ctx) -> list[Finding]:
    process = ctx.subset(ArgumentType.PROCESS)
    if not process:
        return []
    members = ctx.role_members(process, RoleTag.SAFETY_CULTURE)
    if not members:
        return [Finding("R8", Severity.ERROR,
                        "the process argument does not address safety culture")]
    if not any(ctx.solution_backed(m) for m in members):
        return [Finding("R8", Severity.ERROR,
                        "safety-culture elements lack supporting solutions",
                        tuple(members))]
    return []


def _rule_r9(ctx: _Ctx) -> list[Finding]:
    subset = ctx.subset(ArgumentType.CONTEXTUALIZATION)
    if not subset:
        return [Finding("R9", Severity.ERROR, "no contextualization argument: no "
                        "element belongs to the contextualization argument")]
    dimensions = ctx.model.registries.context_dimensions
    if not dimensions:
        return [_vacuous("R9", "context_dimensions")]
    referenced = set()
    for eid in subset:
        referenced |= ctx.model.index[eid].artifacts
    findings = []
    for dimension in dimensions:
        covered = any(
            a.role is ArtifactRole.CONTEXT_DOC and a.dimension == dimension
            and a.id in referenced
            for a in ctx.model.artifacts)
        if not covered:
            findings.append(Finding(
                "R9", Severity.ERROR,
                f"context dimension '{dimension}' has no context document "
                f"referenced from the contextualization argument"))
    return findings


def _rule_r10(ctx: _Ctx) -> list[Finding]:
    subset = ctx.subset(ArgumentType.SOUNDNESS)
    if not subset:
        return [Finding("R10", Severity.ERROR, "no soundness argument: no element "
                        "belongs to the soundness argument")]
    findings = []
    if not ctx.role_members(subset, RoleTag.UNCERTAINTY_METHOD):
        findings.append(Finding(
            "R10", Severity.ERROR,
            "the soundness argument does not argue over applied uncertainty methods"))
    if ctx.all_acps and not ctx.role_members(subset, RoleTag.ACP_RATIONALE):
        findings.append(Finding(
            "R10", Severity.ERROR,
            "assurance claim points are used but the soundness argument gives no "
            "rationale for their placement"))
    return findings


def _rule_st1(ctx: _Ctx) -> list[Finding]:
    process_scope = ctx.model.reachable_from(ctx.subset(ArgumentType.PROCESS))
    findings = []
    for name, argument_type in (("conformance", ArgumentType.CONFORMANCE),
                                ("compliance", ArgumentType.COMPLIANCE)):
        subset = ctx.subset(argument_type)
        stray = sorted(subset - process_scope)
        if subset and stray:
            findings.append(Finding(
                "ST1", Severity.WARNING,
                f"{name} argument is not subordinate to the process argument",
                tuple(stray)))
    return findings


def _rule_d1(ctx: _Ctx) -> list[Finding]:
    criteria = ctx.model.registries.risk_acceptance_criteria
    if not criteria:
        return [_vacuous("D1", "risk_acceptance_criteria")]
    product = ctx.subset(ArgumentType.PRODUCT)
    findings = []
    by_level = {level: [c for c in criteria if c.level is level] for level in RacLevel}
    for level in RacLevel:
        if not by_level[level]:
            findings.append(Finding(
                "D1", Severity.ERROR,
                f"no {level.value} risk acceptance criterion is defined"))
    rac_roles = (RoleTag.RAC_DEFINE, RoleTag.RAC_EVALUATE, RoleTag.RAC_MAINTAIN)
    for level in RacLevel:
        level_tracers: set[str] = set()
        for item in by_level[level]:
            tracers = ctx.tracing_elements(item.id, product)
            if not tracers:
                findings.append(Finding(
                    "D1", Severity.ERROR,
                    f"risk acceptance criterion '{item.id}' is not traced from the "
                    f"product argument"))
            level_tracers.update(tracers)
        if not by_level[level]:
            continue
        covered = set()
        for eid in level_tracers:
            covered |= set(ctx.model.index[eid].roles) & set(rac_roles)
        missing = [r.value for r in rac_roles if r not in covered]
        if missing:
            findings.append(Finding(
                "D1", Severity.ERROR,
                f"{level.value} risk acceptance criteria lack elements with "
                f"roles: {', '.join(missing)}", tuple(sorted(level_tracers))))
    return findings


def _rule_d2(ctx: _Ctx) -> list[Finding]:
    product = ctx.subset(ArgumentType.PRODUCT)
    if not product:
        return []
    findings = []
    for role, label in ((RoleTag.KNOWN_SCENARIOS, "known"),
                        (RoleTag.UNKNOWN_SCENARIOS, "unknown")):
        if not ctx.role_members(product, role):
            findings.append(Finding(
                "D2", Severity.ERROR,
                f"the product argument does not argue over residual risk in "
                f"{label} scenarios"))
    return findings


def _rule_tl1(ctx: _Ctx) -> list[Finding]:
    root = ctx.model.root
    if root is None:
        return []
    if TOP_CLAIM_PHRASE not in root.text.lower():
        return [Finding(
            "TL1", Severity.INFO,
            f"root claim '{root.id}' does not contain the phrase "
            f"'{TOP_CLAIM_PHRASE}'", (root.id,))]
    return []


def _rule_ev1(ctx: _Ctx) -> list[Finding]:
    findings = []
    for element in ctx.model.iter_elements():
        if element.kind is not ElementKind.SOLUTION:
            continue
        evidence = [a for a in element.artifacts
                    if ctx.model.artifact_index.get(a) is not None
                    and ctx.model.artifact_index[a].role is ArtifactRole.EVIDENCE]
        if not evidence:
            findings.append(Finding(
                "EV1", Severity.ERROR,
                f"solution '{element.id}' references no evidence artifact",
                (element.id,), element.location))
    return findings


_RULE_FUNCTIONS: dict[str, Callable[[_Ctx], list[Finding]]] = {
    "R1": _rule_r1, "R2": _rule_r2, "R3": _rule_r3, "R4": _rule_r4,
    "R5": _rule_r5, "R6": _rule_r6, "R7": _rule_r7, "R8": _rule_r8,
    "R9": _rule_r9, "R10": _rule_r10, "ST1": _rule_st1, "D1": _rule_d1,
    "D2": _rule_d2, "TL1": _rule_tl1, "EV1": _rule_ev1,
}


def _apply_overrides(findings: list[Finding], profile: RuleProfile) -> list[Finding]:
    if not profile.severity_overrides:
        return findings
    out = []
    for finding in findings:
        override = profile.severity_overrides.get(finding.rule)
        out.append(replace(finding, severity=override) if override else finding)
    return out


def check_requirements(model: GsnModel, profile: RuleProfile) -> list[Finding]:
    """Evaluate the profile's requirement rules on a well-formed model.

    Raises PreconditionError when the model has well-formedness errors.
    """
    wf = check_wellformed(model)
    if any(f.severity is Severity.ERROR for f in wf):
        raise PreconditionError(wf)
    for rule in profile.enabled_rules:
        if rule not in CATALOG:
            raise UnknownRuleError(f"unknown rule id '{rule}'")
    ctx = _Ctx(model)
    findings: list[Finding] = []
    for rule, fn in _RULE_FUNCTIONS.items():
        if rule in profile.enabled_rules:
            findings.extend(fn(ctx))
    return sort_findings(_apply_overrides(findings, profile))


def evaluate(model: GsnModel, profile: RuleProfile) -> list[Finding]:
    """Full check: well-formedness first, requirement rules when WF is clean.

    Unlike check_requirements this never raises on an ill-formed model; the
    well-formedness findings are the result in that case.
    """
    wf = check_wellformed(model)
    findings = [f for f in wf if f.rule in profile.enabled_rules]
    wf_errors = [f for f in wf if f.severity is Severity.ERROR]
    if wf_errors:
        # Requirement rules are meaningless on an ill-formed model; surface
        # the blocking errors even when the profile excludes WF rules.
        findings.extend(f for f in wf_errors if f.rule not in profile.enabled_rules)
    else:
        ctx = _Ctx(model)
        for rule, fn in _RULE_FUNCTIONS.items():
            if rule in profile.enabled_rules:
                findings.extend(fn(ctx))
    return sort_findings(_apply_overrides(findings, profile))
