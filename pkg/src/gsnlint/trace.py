"""Traceability matrices and coverage statistics.

Links between registry items and argumentation elements are declared via
element `traces` annotations; each registry is covered from a fixed
argument subset (hazards and acceptance criteria from the product
argument, regulatory requirements from compliance, normative ones from
conformance).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .model import AcpRelation, ArgumentType, ElementKind, GsnModel, UnknownRegistryError

#: Which argument subset may cover which registry.
REGISTRY_SUBSETS: dict[str, ArgumentType] = {
    "hazards": ArgumentType.PRODUCT,
    "regulatory_requirements": ArgumentType.COMPLIANCE,
    "normative_requirements": ArgumentType.CONFORMANCE,
    "risk_acceptance_criteria": ArgumentType.PRODUCT,
}


@dataclass(frozen=True)
class TraceRow:
    item_id: str
    covering_elements: tuple[str, ...]
    solution_backed: bool

    @property
    def covered(self) -> bool:
        return bool(self.covering_elements)


@dataclass(frozen=True)
class TraceMatrix:
    registry_name: str
    rows: tuple[TraceRow, ...]
    coverage: float
    vacuous: bool


def trace_registry(model: GsnModel, registry_name: str) -> TraceMatrix:
    """Coverage of one registry by its associated argument subset.

    An empty registry reports coverage 1.0 with the vacuous flag set, so
    threshold-style consumers stay simple.
    """
    if registry_name not in REGISTRY_SUBSETS:
        raise UnknownRegistryError(registry_name)
    subset = model.argument_subset(REGISTRY_SUBSETS[registry_name])
    tracing: dict[str, list[str]] = {}
    for eid in subset:
        for item_id in model.index[eid].traces:
            tracing.setdefault(item_id, []).append(eid)
    rows = []
    for item_id in model.registries.item_ids(registry_name):
        covering = tuple(sorted(tracing.get(item_id, [])))
        backed = any(model.has_solution_descendant[eid] for eid in covering)
        rows.append(TraceRow(item_id, covering, backed))
    if not rows:
        return TraceMatrix(registry_name, (), 1.0, True)
    coverage = sum(1 for r in rows if r.covered) / len(rows)
    return TraceMatrix(registry_name, tuple(rows), coverage, False)


def matrix_to_csv(matrix: TraceMatrix) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["item_id", "covered", "solution_backed", "covering_elements"])
    for row in matrix.rows:
        writer.writerow([row.item_id, str(row.covered).lower(),
                         str(row.solution_backed).lower(),
                         " ".join(row.covering_elements)])
    return buffer.getvalue()


def matrix_to_json(matrix: TraceMatrix, indent: int = 2) -> str:
    data = {
        "registry": matrix.registry_name,
        "coverage": matrix.coverage,
        "vacuous": matrix.vacuous,
        "rows": [
            {"item_id": r.item_id, "covered": r.covered,
             "solution_backed": r.solution_backed,
             "covering_elements": list(r.covering_elements)}
            for r in matrix.rows
        ],
    }
    return json.dumps(data, indent=indent)


def acp_report(model: GsnModel) -> dict:
    """Assurance-claim-point placement statistics over the risk argument."""
    risk = model.argument_subset(ArgumentType.RISK)
    risk_edges = [(src, dst) for src, dst in model.support_edges if src in risk]
    acp_edges = 0
    total_acps = 0
    referenced_goals: set[str] = set()
    for element in model.iter_elements():
        for acp in element.acps:
            total_acps += 1
            referenced_goals.add(acp.confidence_goal)
            if element.id in risk and acp.relation is AcpRelation.SUPPORTED_BY:
                acp_edges += 1
    confidence = model.argument_subset(ArgumentType.CONFIDENCE)
    unlinked = sorted(
        eid for eid in confidence
        if model.index[eid].kind is ElementKind.GOAL and eid not in referenced_goals)
    density = acp_edges / len(risk_edges) if risk_edges else 0.0
    return {
        "total_acps": total_acps,
        "risk_edges": len(risk_edges),
        "acp_density": density,
        "unlinked_confidence_goals": unlinked,
    }


def evidence_report(model: GsnModel) -> dict:
    """Solutions lacking artifacts and goals left undeveloped, sorted by id."""
    solutions = [e for e in model.iter_elements() if e.kind is ElementKind.SOLUTION]
    without_artifacts = sorted(e.id for e in solutions if not e.artifacts)
    undeveloped = sorted(e.id for e in model.iter_elements() if e.undeveloped)
    return {
        "solutions_total": len(solutions),
        "solutions_without_artifacts": without_artifacts,
        "undeveloped_goals": undeveloped,
    }
