"""Grouping-quality metrics and block-diagonal views of a solution.

A (part, machine) pair is inside a diagonal block when the part's family
index equals the machine's cell index. Ones outside blocks are exceptional
elements, zeros inside blocks are voids; the three percentage criteria are
derived from those counts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clustering import CellSolution
from .instance import Instance

ORACLE_MAX_MACHINES = 10

IN_BLOCK_ONE = "1"
EXCEPTIONAL_ONE = "*"
VOID = "·"
OUTSIDE = " "


@dataclass(frozen=True)
class MetricsReport:
    """Counts and the three percentage criteria for one scored solution."""

    ue: int              # unity elements: total operations
    ee: int              # exceptional elements: ones outside blocks
    ve: int              # voids: zeros inside blocks
    denominator_mu: int  # total diagonal-block area, sum of m_k * p_k
    pe: float            # 100 * ee / ue
    mu: float            # 100 * (ue - ee) / denominator_mu
    ge: float            # 100 * (ue - ee) / (ue + ve)
    warnings: tuple[str, ...] = ()


def _check_labels_match(inst: Instance, sol: CellSolution) -> None:
    if sol.machine_labels != inst.machine_labels or sol.part_labels != inst.part_labels:
        raise ValueError("solution labels do not match the instance")


def score(inst: Instance, sol: CellSolution) -> MetricsReport:
    """Count unity/exceptional/void elements and form PE, MU, GE."""
    _check_labels_match(inst, sol)
    a = inst.incidence
    family = np.asarray(sol.part_family)
    cell = np.asarray(sol.machine_cell)
    in_block = family[:, None] == cell[None, :]

    ue = int(a.sum())
    ee = int(((a == 1) & ~in_block).sum())
    ve = int(((a == 0) & in_block).sum())
    denominator = int(in_block.sum())

    warnings: list[str] = []
    empty_families = sorted(set(cell.tolist()) - set(family.tolist()))
    if empty_families:
        warnings.append(
            "empty famil"
            + ("y" if len(empty_families) == 1 else "ies")
            + f" for cell(s) {empty_families}: machine utilization overstates"
        )
    pe = 100.0 * ee / ue
    if denominator == 0:
        warnings.append("no machine-part pair falls inside any block")
        mu = 0.0
    else:
        mu = 100.0 * (ue - ee) / denominator
    ge = 100.0 * (ue - ee) / (ue + ve)
    return MetricsReport(
        ue=ue, ee=ee, ve=ve, denominator_mu=denominator,
        pe=pe, mu=mu, ge=ge, warnings=tuple(warnings),
    )


def block_order(sol: CellSolution) -> tuple[list[int], list[int]]:
    """Machine and part orders that make the solution's blocks contiguous."""
    machines = sorted(range(len(sol.machine_cell)), key=lambda j: (sol.machine_cell[j], j))
    parts = sorted(range(len(sol.part_family)), key=lambda i: (sol.part_family[i], i))
    return machines, parts


def block_view(inst: Instance, sol: CellSolution) -> str:
    """Fixed-width rendering of the solution-ordered incidence matrix.

    In-block ones print as '1', exceptional ones as '*', voids as a middle
    dot, and everything outside the diagonal blocks stays blank.
    """
    _check_labels_match(inst, sol)
    machines, parts = block_order(sol)
    row_width = max(len(lbl) for lbl in inst.part_labels)
    col_widths = [max(len(inst.machine_labels[j]), 1) for j in machines]

    header = " " * row_width + "".join(
        " " + inst.machine_labels[j].rjust(w) for j, w in zip(machines, col_widths)
    )
    lines = [header]
    for i in parts:
        symbols = []
        for j, w in zip(machines, col_widths):
            inside = sol.part_family[i] == sol.machine_cell[j]
            if inst.incidence[i, j] == 1:
                mark = IN_BLOCK_ONE if inside else EXCEPTIONAL_ONE
            else:
                mark = VOID if inside else OUTSIDE
            symbols.append(" " + mark.rjust(w))
        lines.append(inst.part_labels[i].rjust(row_width) + "".join(symbols))
    return "\n".join(lines) + "\n"


def _partitions_into(n: int, k: int):
    """Restricted growth strings over n items with exactly k blocks, lex order."""
    def rec(prefix: list[int], used: int):
        if len(prefix) == n:
            if used == k:
                yield tuple(prefix)
            return
        # still need (k - used) new block openers among the remaining slots
        remaining = n - len(prefix)
        for value in range(min(used + 1, k)):
            if used + (1 if value == used else 0) + (remaining - 1) >= k:
                prefix.append(value)
                yield from rec(prefix, max(used, value + 1))
                prefix.pop()

    if 0 < k <= n:
        yield from rec([], 0)


def _greedy_families(inst: Instance, machine_cell: tuple[int, ...]) -> tuple[int, ...]:
    """Per machine partition, put each part where most of its ones land.

    Ties prefer the cell yielding fewer voids for that part, then the
    lowest cell index.
    """
    n_cells = max(machine_cell)
    cell_sizes = [sum(1 for c in machine_cell if c == k) for k in range(1, n_cells + 1)]
    families = []
    for i in range(inst.n_parts):
        ones = [0] * n_cells
        for j in range(inst.n_machines):
            if inst.incidence[i, j] == 1:
                ones[machine_cell[j] - 1] += 1
        families.append(
            min(
                range(1, n_cells + 1),
                key=lambda k: (-ones[k - 1], cell_sizes[k - 1] - ones[k - 1], k),
            )
        )
    return tuple(families)


def solution_from_arrays(
    inst: Instance, machine_cell: tuple[int, ...], part_family: tuple[int, ...]
) -> CellSolution:
    """Wrap externally supplied assignments, recomputing exceptional parts."""
    exceptional = frozenset(
        inst.part_labels[i]
        for i in range(inst.n_parts)
        if len({
            machine_cell[j]
            for j in range(inst.n_machines)
            if inst.incidence[i, j] == 1
        }) > 1
    )
    return CellSolution(
        machine_labels=inst.machine_labels,
        part_labels=inst.part_labels,
        machine_cell=machine_cell,
        part_family=part_family,
        exceptional_machines=frozenset(),
        exceptional_parts=exceptional,
        n_cells=max(max(machine_cell), max(part_family)),
    )


def enumerate_partition_scores(inst: Instance, n_cells: int):
    """Yield (solution, report) for every machine partition into n_cells cells.

    Partitions are set partitions into exactly n_cells non-empty cells,
    visited as restricted growth strings in lexicographic order; part
    families are assigned greedily per partition. Only usable for small m.
    """
    if inst.n_machines > ORACLE_MAX_MACHINES:
        raise ValueError(
            f"exhaustive oracle is capped at {ORACLE_MAX_MACHINES} machines, "
            f"got {inst.n_machines}"
        )
    if not 1 <= n_cells <= inst.n_machines:
        raise ValueError(f"n_cells must be in 1..{inst.n_machines}, got {n_cells}")
    for rgs in _partitions_into(inst.n_machines, n_cells):
        machine_cell = tuple(g + 1 for g in rgs)
        sol = solution_from_arrays(
            inst, machine_cell, _greedy_families(inst, machine_cell)
        )
        yield sol, score(inst, sol)


def oracle_best_partition(
    inst: Instance, n_cells: int, objective: str = "ge"
) -> tuple[CellSolution, MetricsReport]:
    """Exhaustive search over machine partitions with greedy part families.

    The enumeration order doubles as the deterministic tie-break: the
    lexicographically first partition attaining the best objective wins.
    """
    if objective not in ("pe", "mu", "ge"):
        raise ValueError(f"objective must be pe, mu or ge, got {objective!r}")
    best: tuple[float, CellSolution, MetricsReport] | None = None
    for sol, report in enumerate_partition_scores(inst, n_cells):
        value = getattr(report, objective)
        key = value if objective == "pe" else -value
        if best is None or key < best[0]:
            best = (key, sol, report)
    assert best is not None
    return best[1], best[2]
