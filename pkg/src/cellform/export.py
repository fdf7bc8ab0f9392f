"""The JSON solution-export document and the plain-text assignment format.

The export is a single self-contained JSON document (schema "cellform/1")
from which the designer UI can render the scatter plot and from which the
assignment can be extracted and re-scored to the identical metrics.
"""

from __future__ import annotations

import json

from .clustering import CellSolution, SolveResult
from .instance import Instance
from .metrics import MetricsReport, score, solution_from_arrays

SCHEMA = "cellform/1"


class AssignmentError(ValueError):
    """Malformed or incomplete machine/part assignment."""


def build_solution_export(result: SolveResult, report: MetricsReport) -> dict:
    """Assemble the export document for one solved instance."""
    inst = result.instance
    sol = result.solution
    plane = result.plane
    coord = lambda xy: [round(float(xy[0]), 6), round(float(xy[1]), 6)]
    return {
        "schema": SCHEMA,
        "instance": instance_block(inst),
        "similarity": [
            [round(float(v), 6) for v in row] for row in result.similarity.entries
        ],
        "eigenvalues": [round(float(v), 6) for v in result.eigensystem.eigenvalues],
        "explained_variance": round(plane.explained_variance, 6),
        "machine_loadings": {
            label: coord(plane.machine_loadings[j])
            for j, label in enumerate(inst.machine_labels)
        },
        "part_scores": {
            label: coord(plane.part_scores[i])
            for i, label in enumerate(inst.part_labels)
        },
        "machine_cell": sol.machine_cell_map(),
        "part_family": sol.part_family_map(),
        "exceptional_machines": sorted(sol.exceptional_machines),
        "exceptional_parts": sorted(sol.exceptional_parts),
        "n_cells": sol.n_cells,
        "metrics": metrics_block(report),
        "warnings": list(sol.warnings),
        "config": {
            "n_cells": result.config.n_cells,
            "gap_threshold_deg": result.config.gap_threshold_deg,
            "independence_deg": result.config.independence_deg,
        },
    }


def instance_block(inst: Instance) -> dict:
    return {
        "machine_labels": list(inst.machine_labels),
        "part_labels": list(inst.part_labels),
        "incidence": inst.incidence.tolist(),
    }


def metrics_block(report: MetricsReport) -> dict:
    return {
        "ue": report.ue,
        "ee": report.ee,
        "ve": report.ve,
        "denominator_mu": report.denominator_mu,
        "pe": report.pe,
        "mu": report.mu,
        "ge": report.ge,
        "warnings": list(report.warnings),
    }


def export_json(result: SolveResult, report: MetricsReport) -> str:
    return json.dumps(build_solution_export(result, report), indent=2) + "\n"


def assignment_from_export(doc: dict) -> tuple[dict[str, int], dict[str, int]]:
    """Extract the (machine -> cell, part -> family) maps from an export."""
    return dict(doc["machine_cell"]), dict(doc["part_family"])


def parse_assignment(text: str) -> tuple[dict[str, int], dict[str, int]]:
    """Parse assignment lines: ``machine <label> <cell>``, ``part <label> <family>``."""
    machines: dict[str, int] = {}
    parts: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 3 or fields[0] not in ("machine", "part"):
            raise AssignmentError(
                f"line {lineno}: expected 'machine <label> <cell>' or "
                f"'part <label> <family>', got {line!r}"
            )
        kind, label, index_text = fields
        try:
            index = int(index_text)
        except ValueError:
            raise AssignmentError(
                f"line {lineno}: {index_text!r} is not an integer"
            ) from None
        if index < 1:
            raise AssignmentError(f"line {lineno}: cell index must be >= 1, got {index}")
        target = machines if kind == "machine" else parts
        if label in target:
            raise AssignmentError(f"line {lineno}: {kind} {label!r} assigned twice")
        target[label] = index
    return machines, parts


def format_assignment(machine_cell: dict[str, int], part_family: dict[str, int]) -> str:
    lines = [f"machine {label} {cell}" for label, cell in machine_cell.items()]
    lines += [f"part {label} {family}" for label, family in part_family.items()]
    return "\n".join(lines) + "\n"


def solution_from_assignment(
    inst: Instance,
    machine_cell: dict[str, int],
    part_family: dict[str, int],
) -> CellSolution:
    """Validate an external assignment against an instance and wrap it."""
    unknown = [lbl for lbl in machine_cell if lbl not in inst.machine_labels]
    unknown += [lbl for lbl in part_family if lbl not in inst.part_labels]
    if unknown:
        raise AssignmentError(f"unknown labels: {', '.join(sorted(unknown))}")
    unassigned = [lbl for lbl in inst.machine_labels if lbl not in machine_cell]
    unassigned += [lbl for lbl in inst.part_labels if lbl not in part_family]
    if unassigned:
        raise AssignmentError(f"unassigned elements: {', '.join(unassigned)}")
    bad = [
        lbl for lbl, idx in list(machine_cell.items()) + list(part_family.items())
        if not isinstance(idx, int) or isinstance(idx, bool) or idx < 1
    ]
    if bad:
        raise AssignmentError(
            f"cell indices must be positive integers; bad: {', '.join(sorted(bad))}"
        )
    return solution_from_arrays(
        inst,
        tuple(machine_cell[lbl] for lbl in inst.machine_labels),
        tuple(part_family[lbl] for lbl in inst.part_labels),
    )


def score_assignment(
    inst: Instance,
    machine_cell: dict[str, int],
    part_family: dict[str, int],
) -> MetricsReport:
    """Score an externally supplied partition (the headless what-if loop)."""
    return score(inst, solution_from_assignment(inst, machine_cell, part_family))
