"""In-memory representation of a safety assurance argumentation model.

A model is a set of GSN modules (goals, strategies, solutions and contextual
elements connected by supported_by / in_context_of relations) plus the
registries of external items (hazards, requirements, risk acceptance
criteria) and the artifacts the argumentation references.  Models are
immutable after linking; all derived views (element index, argument-type
membership, solution reachability) are computed lazily and cached.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Optional


class ElementKind(str, enum.Enum):
    GOAL = "goal"
    STRATEGY = "strategy"
    SOLUTION = "solution"
    CONTEXT = "context"
    ASSUMPTION = "assumption"
    JUSTIFICATION = "justification"


#: Kinds that never carry outgoing relations.
SINK_KINDS = frozenset(
    {ElementKind.SOLUTION, ElementKind.CONTEXT, ElementKind.ASSUMPTION, ElementKind.JUSTIFICATION}
)

#: Kinds attached via in_context_of.
CONTEXTUAL_KINDS = frozenset(
    {ElementKind.CONTEXT, ElementKind.ASSUMPTION, ElementKind.JUSTIFICATION}
)


class ArgumentType(str, enum.Enum):
    RISK = "risk"
    CONFIDENCE = "confidence"
    CONFORMANCE = "conformance"
    COMPLIANCE = "compliance"
    PRODUCT = "product"
    PROCESS = "process"
    CONTEXTUALIZATION = "contextualization"
    SOUNDNESS = "soundness"


class RoleTag(str, enum.Enum):
    SAFETY_CULTURE = "safety_culture"
    LIFECYCLE_OPERATION = "lifecycle_operation"
    LIFECYCLE_MAINTENANCE = "lifecycle_maintenance"
    HAZARD_MANAGEMENT = "hazard_management"
    GLOBAL_RAC = "global_rac"
    SCENARIO_RAC = "scenario_rac"
    KNOWN_SCENARIOS = "known_scenarios"
    UNKNOWN_SCENARIOS = "unknown_scenarios"
    RAC_DEFINE = "rac_define"
    RAC_EVALUATE = "rac_evaluate"
    RAC_MAINTAIN = "rac_maintain"
    SELECTION_RATIONALE = "selection_rationale"
    UNCERTAINTY_METHOD = "uncertainty_method"
    ACP_RATIONALE = "acp_rationale"


class AcpRelation(str, enum.Enum):
    SUPPORTED_BY = "supported_by"
    IN_CONTEXT_OF = "in_context_of"


class HazardStatus(str, enum.Enum):
    OPEN = "open"
    MANAGED = "managed"


class RacLevel(str, enum.Enum):
    GLOBAL = "global"
    SCENARIO = "scenario"


class ArtifactRole(str, enum.Enum):
    EVIDENCE = "evidence"
    CONTEXT_DOC = "context_doc"


#: Context dimensions assumed when a model declares none.
DEFAULT_CONTEXT_DIMENSIONS = (
    "operational_concept",
    "odd",
    "behavior_spec",
    "concept_of_operations",
    "system_description",
    "concept_explanations",
)


@dataclass(frozen=True)
class SourceLocation:
    file: str
    line: int
    column: int = 1


@dataclass(frozen=True)
class AssuranceClaimPoint:
    target: str
    relation: AcpRelation
    confidence_goal: str


@dataclass
class GsnElement:
    id: str
    kind: ElementKind
    text: str = ""
    undeveloped: bool = False
    argument_type: Optional[ArgumentType] = None
    roles: frozenset[RoleTag] = frozenset()
    supported_by: tuple[str, ...] = ()
    in_context_of: tuple[str, ...] = ()
    traces: frozenset[str] = frozenset()
    artifacts: frozenset[str] = frozenset()
    acps: tuple[AssuranceClaimPoint, ...] = ()
    location: Optional[SourceLocation] = None

    def __post_init__(self) -> None:
        # Normalize collection fields so hand-built elements behave like parsed ones.
        self.roles = frozenset(self.roles)
        self.supported_by = tuple(self.supported_by)
        self.in_context_of = tuple(self.in_context_of)
        self.traces = frozenset(self.traces)
        self.artifacts = frozenset(self.artifacts)
        self.acps = tuple(self.acps)


@dataclass
class Hazard:
    id: str
    description: str = ""
    status: HazardStatus = HazardStatus.OPEN


@dataclass
class RegulatoryRequirement:
    id: str
    source: str = ""
    text: str = ""


@dataclass
class NormativeRequirement:
    id: str
    source: str = ""
    text: str = ""
    selection_rationale: Optional[str] = None


@dataclass
class RiskAcceptanceCriterion:
    id: str
    level: RacLevel = RacLevel.GLOBAL
    text: str = ""


@dataclass
class Registries:
    hazards: list[Hazard] = field(default_factory=list)
    regulatory_requirements: list[RegulatoryRequirement] = field(default_factory=list)
    normative_requirements: list[NormativeRequirement] = field(default_factory=list)
    risk_acceptance_criteria: list[RiskAcceptanceCriterion] = field(default_factory=list)
    context_dimensions: list[str] = field(
        default_factory=lambda: list(DEFAULT_CONTEXT_DIMENSIONS)
    )

    TRACEABLE = ("hazards", "regulatory_requirements", "normative_requirements",
                 "risk_acceptance_criteria")

    def item_ids(self, registry_name: str) -> list[str]:
        if registry_name not in self.TRACEABLE:
            raise UnknownRegistryError(registry_name)
        return [item.id for item in getattr(self, registry_name)]


@dataclass
class Artifact:
    id: str
    role: ArtifactRole
    title: str = ""
    uri: str = ""
    dimension: Optional[str] = None


@dataclass
class GsnModule:
    id: str
    elements: list[GsnElement] = field(default_factory=list)


class UnknownIdError(KeyError):
    """Raised when an element id does not resolve within the model."""


class UnknownRegistryError(KeyError):
    """Raised for a registry name outside the traceable registry set."""


@dataclass(frozen=True)
class StructuralProblem:
    """One reason a set of modules cannot form a linked model."""

    code: str  # duplicate-id | unresolved-ref | cycle | invalid-acp
    message: str
    elements: tuple[str, ...] = ()


class ModelError(Exception):
    def __init__(self, problems: list[StructuralProblem]):
        self.problems = problems
        super().__init__("; ".join(p.message for p in problems))


def find_structural_problems(modules: Iterable[GsnModule]) -> list[StructuralProblem]:
    """Report duplicate ids, dangling references, relation cycles, and bad ACPs."""
    problems: list[StructuralProblem] = []
    index: dict[str, GsnElement] = {}
    for module in modules:
        for element in module.elements:
            if element.id in index:
                problems.append(StructuralProblem(
                    "duplicate-id", f"duplicate element id '{element.id}'", (element.id,)))
            else:
                index[element.id] = element

    for element in index.values():
        for ref in (*element.supported_by, *element.in_context_of):
            if ref not in index:
                problems.append(StructuralProblem(
                    "unresolved-ref",
                    f"element '{element.id}' references unknown element '{ref}'",
                    (element.id, ref)))
        for acp in element.acps:
            relation_list = (element.supported_by if acp.relation is AcpRelation.SUPPORTED_BY
                             else element.in_context_of)
            if acp.target not in relation_list:
                problems.append(StructuralProblem(
                    "invalid-acp",
                    f"assurance claim point on '{element.id}' targets '{acp.target}', "
                    f"which is not in its {acp.relation.value} list",
                    (element.id, acp.target)))
            goal = index.get(acp.confidence_goal)
            if goal is None:
                problems.append(StructuralProblem(
                    "unresolved-ref",
                    f"assurance claim point on '{element.id}' references unknown "
                    f"confidence goal '{acp.confidence_goal}'",
                    (element.id, acp.confidence_goal)))
            elif goal.kind is not ElementKind.GOAL:
                problems.append(StructuralProblem(
                    "invalid-acp",
                    f"confidence goal '{acp.confidence_goal}' of assurance claim point "
                    f"on '{element.id}' is a {goal.kind.value}, not a goal",
                    (element.id, acp.confidence_goal)))

    for cycle in _find_cycles(index):
        problems.append(StructuralProblem(
            "cycle", "supported_by cycle: " + " -> ".join((*cycle, cycle[0])), cycle))
    return problems


def _find_cycles(index: dict[str, GsnElement]) -> list[tuple[str, ...]]:
    """Cycles of the supported_by relation, each reported once."""
    color: dict[str, int] = {}  # 0 unvisited, 1 on stack, 2 done
    cycles: list[tuple[str, ...]] = []
    stack: list[str] = []

    def visit(node: str) -> None:
        color[node] = 1
        stack.append(node)
        for child in index[node].supported_by:
            if child not in index:
                continue
            state = color.get(child, 0)
            if state == 0:
                visit(child)
            elif state == 1:
                cycles.append(tuple(stack[stack.index(child):]))
        stack.pop()
        color[node] = 2

    for node in index:
        if color.get(node, 0) == 0:
            visit(node)
    return cycles


@dataclass
class GsnModel:
    id: str
    version: str = "0"
    modules: list[GsnModule] = field(default_factory=list)
    registries: Registries = field(default_factory=Registries)
    artifacts: list[Artifact] = field(default_factory=list)
    fragmentary: bool = False

    # -- derived views ------------------------------------------------

    @cached_property
    def index(self) -> dict[str, GsnElement]:
        out: dict[str, GsnElement] = {}
        for module in self.modules:
            for element in module.elements:
                out.setdefault(element.id, element)
        return out

    @cached_property
    def artifact_index(self) -> dict[str, Artifact]:
        return {a.id: a for a in self.artifacts}

    @cached_property
    def element_module(self) -> dict[str, str]:
        return {e.id: m.id for m in self.modules for e in m.elements}

    @cached_property
    def support_parents(self) -> dict[str, list[str]]:
        parents: dict[str, list[str]] = {eid: [] for eid in self.index}
        for element in self.index.values():
            for child in element.supported_by:
                if child in parents:
                    parents[child].append(element.id)
        return parents

    @cached_property
    def context_referencers(self) -> dict[str, list[str]]:
        refs: dict[str, list[str]] = {eid: [] for eid in self.index}
        for element in self.index.values():
            for target in element.in_context_of:
                if target in refs:
                    refs[target].append(element.id)
        return refs

    @cached_property
    def topo_order(self) -> list[str]:
        """Elements ordered parents-before-children along supported_by."""
        indegree = {eid: 0 for eid in self.index}
        for element in self.index.values():
            for child in element.supported_by:
                if child in indegree:
                    indegree[child] += 1
        queue = sorted(eid for eid, deg in indegree.items() if deg == 0)
        order: list[str] = []
        while queue:
            eid = queue.pop()
            order.append(eid)
            for child in self.index[eid].supported_by:
                if child in indegree:
                    indegree[child] -= 1
                    if indegree[child] == 0:
                        queue.append(child)
        return order

    @cached_property
    def root(self) -> Optional[GsnElement]:
        """The unique goal with no incoming supported_by edge, if there is one."""
        roots = [e for e in self.index.values()
                 if e.kind is ElementKind.GOAL and not self.support_parents[e.id]]
        if len(roots) == 1:
            return roots[0]
        return None

    @cached_property
    def effective_types(self) -> dict[str, frozenset[ArgumentType]]:
        """Argument-type membership per element.

        An explicit tag overrides inheritance; untagged elements take the
        union of their supported_by parents' memberships, so a join node
        below two differently typed branches belongs to both arguments.
        Contextual elements inherit from the elements referencing them.
        """
        eff: dict[str, frozenset[ArgumentType]] = {}
        for eid in self.topo_order:
            element = self.index[eid]
            if element.argument_type is not None:
                eff[eid] = frozenset({element.argument_type})
            else:
                inherited: set[ArgumentType] = set()
                for parent in self.support_parents[eid]:
                    inherited |= eff.get(parent, frozenset())
                eff[eid] = frozenset(inherited)
        for eid, element in self.index.items():
            if element.kind in CONTEXTUAL_KINDS and element.argument_type is None:
                inherited = set()
                for referencer in self.context_referencers[eid]:
                    inherited |= eff.get(referencer, frozenset())
                eff[eid] = frozenset(inherited)
        return eff

    @cached_property
    def has_solution_descendant(self) -> dict[str, bool]:
        """Whether any solution is reachable below an element via supported_by."""
        backed = {eid: False for eid in self.index}
        for eid in reversed(self.topo_order):
            element = self.index[eid]
            for child in element.supported_by:
                child_el = self.index.get(child)
                if child_el is None:
                    continue
                if child_el.kind is ElementKind.SOLUTION or backed[child]:
                    backed[eid] = True
                    break
        return backed

    @cached_property
    def support_edges(self) -> list[tuple[str, str]]:
        return [(e.id, child) for e in self.iter_elements() for child in e.supported_by]

    # -- operations ---------------------------------------------------

    def iter_elements(self) -> Iterable[GsnElement]:
        for module in self.modules:
            yield from module.elements

    def resolve(self, element_id: str) -> GsnElement:
        try:
            return self.index[element_id]
        except KeyError:
            raise UnknownIdError(element_id) from None

    def argument_subset(self, argument_type: ArgumentType) -> set[str]:
        return {eid for eid, types in self.effective_types.items() if argument_type in types}

    def descendants(self, element_id: str) -> set[str]:
        """Transitive supported_by closure plus contextual sinks, start excluded."""
        start = self.resolve(element_id)
        seen: set[str] = set(start.in_context_of)
        frontier = list(start.supported_by)
        while frontier:
            eid = frontier.pop()
            if eid in seen or eid not in self.index:
                continue
            seen.add(eid)
            element = self.index[eid]
            seen.update(c for c in element.in_context_of if c in self.index)
            frontier.extend(element.supported_by)
        seen.discard(element_id)
        return seen

    def reachable_from(self, element_ids: Iterable[str]) -> set[str]:
        """Union of the given elements and all their descendants."""
        out: set[str] = set()
        for eid in element_ids:
            if eid in self.index:
                out.add(eid)
                out |= self.descendants(eid)
        return out


def link_model(
    model_id: str,
    version: str = "0",
    modules: Optional[list[GsnModule]] = None,
    registries: Optional[Registries] = None,
    artifacts: Optional[list[Artifact]] = None,
    fragmentary: bool = False,
) -> GsnModel:
    """Build a model, rejecting structurally broken module sets."""
    modules = modules or []
    problems = find_structural_problems(modules)
    if problems:
        raise ModelError(problems)
    return GsnModel(
        id=model_id,
        version=version,
        modules=modules,
        registries=registries or Registries(),
        artifacts=artifacts or [],
        fragmentary=fragmentary,
    )


def canonical_dict(model: GsnModel) -> dict:
    """Schema-ordered plain-data form of a model.

    Elements are sorted by id; declared relation order is preserved.  Two
    models are structurally equal iff their canonical dicts are equal.
    """
    out: dict = {
        "model": {"id": model.id, "version": model.version},
    }
    if model.fragmentary:
        out["model"]["fragmentary"] = True
    out["modules"] = [
        {
            "id": module.id,
            "elements": [
                _element_dict(e) for e in sorted(module.elements, key=lambda e: e.id)
            ],
        }
        for module in model.modules
    ]
    reg = model.registries
    out["registries"] = {
        "hazards": [
            {"id": h.id, "description": h.description, "status": h.status.value}
            for h in reg.hazards
        ],
        "regulatory_requirements": [
            {"id": r.id, "source": r.source, "text": r.text}
            for r in reg.regulatory_requirements
        ],
        "normative_requirements": [
            _drop_none({"id": n.id, "source": n.source, "text": n.text,
                        "selection_rationale": n.selection_rationale})
            for n in reg.normative_requirements
        ],
        "risk_acceptance_criteria": [
            {"id": r.id, "level": r.level.value, "text": r.text}
            for r in reg.risk_acceptance_criteria
        ],
        "context_dimensions": list(reg.context_dimensions),
    }
    out["artifacts"] = [
        _drop_none({"id": a.id, "role": a.role.value, "title": a.title,
                    "uri": a.uri, "dimension": a.dimension})
        for a in model.artifacts
    ]
    return out


def _element_dict(element: GsnElement) -> dict:
    out: dict = {"id": element.id, "kind": element.kind.value, "text": element.text}
    if element.undeveloped:
        out["undeveloped"] = True
    if element.argument_type is not None:
        out["argument_type"] = element.argument_type.value
    if element.roles:
        out["roles"] = sorted(r.value for r in element.roles)
    if element.supported_by:
        out["supported_by"] = list(element.supported_by)
    if element.in_context_of:
        out["in_context_of"] = list(element.in_context_of)
    if element.traces:
        out["traces"] = sorted(element.traces)
    if element.artifacts:
        out["artifacts"] = sorted(element.artifacts)
    if element.acps:
        out["acp"] = [
            {"target": a.target, "relation": a.relation.value,
             "confidence_goal": a.confidence_goal}
            for a in element.acps
        ]
    return out


def _drop_none(d: dict) -> dict:
    return {k: v for k, v in d.items() if v is not None}


def models_equal(a: GsnModel, b: GsnModel) -> bool:
    return canonical_dict(a) == canonical_dict(b)


def copy_model(model: GsnModel) -> GsnModel:
    """Deep-enough copy for building mutated variants; caches are not shared."""
    modules = [GsnModule(m.id, [replace(e) for e in m.elements]) for m in model.modules]
    registries = Registries(
        hazards=[replace(h) for h in model.registries.hazards],
        regulatory_requirements=[replace(r) for r in model.registries.regulatory_requirements],
        normative_requirements=[replace(n) for n in model.registries.normative_requirements],
        risk_acceptance_criteria=[replace(r) for r in model.registries.risk_acceptance_criteria],
        context_dimensions=list(model.registries.context_dimensions),
    )
    artifacts = [replace(a) for a in model.artifacts]
    return GsnModel(model.id, model.version, modules, registries, artifacts, model.fragmentary)
