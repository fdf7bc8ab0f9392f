"""Angular clustering on the principal plane: machines to cells, parts to families.

Machines are sorted by loading angle; cells are contiguous arcs obtained by
splitting the circle at the largest angular gaps (or at every gap above a
threshold when the cell count is free). Parts follow the nearest loading
line among the machines they actually use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .instance import Instance
from .similarity import (
    MachineStats,
    SimilarityMatrix,
    StandardizedMatrix,
    correlation_matrix,
    machine_stats,
    standardize,
)
from .spectral import EigenSystem, PrincipalPlane, eigendecompose, principal_plane

ZERO_NORM = 1e-9


class ClusteringError(ValueError):
    """Unsatisfiable clustering request or degenerate geometry."""


@dataclass(frozen=True)
class ClusterConfig:
    """Knobs for the angular clustering step.

    n_cells: exact number of cells to form, or None to let every circular
        gap wider than gap_threshold_deg start a new cell.
    independence_deg: a cell whose angular spread reaches this is suspect;
        if dropping one machine cures it, that machine is flagged
        exceptional and moved to the nearest neighboring cell.
    """

    n_cells: int | None = None
    gap_threshold_deg: float = 60.0
    independence_deg: float = 90.0

    def __post_init__(self):
        if not 0.0 < self.gap_threshold_deg < 180.0:
            raise ValueError(f"gap_threshold_deg must be in (0, 180), got {self.gap_threshold_deg}")
        if not 0.0 < self.independence_deg <= 180.0:
            raise ValueError(f"independence_deg must be in (0, 180], got {self.independence_deg}")
        if self.n_cells is not None and self.n_cells < 1:
            raise ValueError(f"n_cells must be positive, got {self.n_cells}")


@dataclass(frozen=True)
class CellSolution:
    """Machine cells and part families, 1-based, with exception flags."""

    machine_labels: tuple[str, ...]
    part_labels: tuple[str, ...]
    machine_cell: tuple[int, ...]          # per machine, in 1..n_cells
    part_family: tuple[int, ...]           # per part, in 1..n_cells
    exceptional_machines: frozenset[str]
    exceptional_parts: frozenset[str]
    n_cells: int
    warnings: tuple[str, ...] = field(default=())

    def machine_cell_map(self) -> dict[str, int]:
        return dict(zip(self.machine_labels, self.machine_cell))

    def part_family_map(self) -> dict[str, int]:
        return dict(zip(self.part_labels, self.part_family))

    def cells_as_sets(self) -> set[frozenset[str]]:
        """Machine membership ignoring cell numbers, for comparisons."""
        by_cell: dict[int, set[str]] = {}
        for label, cell in zip(self.machine_labels, self.machine_cell):
            by_cell.setdefault(cell, set()).add(label)
        return {frozenset(v) for v in by_cell.values()}

    def families_as_sets(self) -> set[frozenset[str]]:
        by_family: dict[int, set[str]] = {}
        for label, fam in zip(self.part_labels, self.part_family):
            by_family.setdefault(fam, set()).add(label)
        return {frozenset(v) for v in by_family.values()}


def circular_distance(a: float, b: float) -> float:
    """Distance between two directions on the circle, in [0, 180]."""
    d = abs(a - b) % 360.0
    return min(d, 360.0 - d)


def line_distance(a: float, b: float) -> float:
    """Distance between two undirected lines through the origin, in [0, 90]."""
    d = circular_distance(a, b)
    return min(d, 180.0 - d)


def machine_angles(plane: PrincipalPlane, machine_labels: tuple[str, ...]) -> np.ndarray:
    """Loading direction of each machine, degrees counterclockwise from PC1."""
    loadings = plane.machine_loadings
    norms = np.hypot(loadings[:, 0], loadings[:, 1])
    for j, n in enumerate(norms):
        if n < ZERO_NORM:
            raise ClusteringError(
                f"machine {machine_labels[j]!r} has a zero-length loading; "
                "its direction on the principal plane is undefined"
            )
    return np.degrees(np.arctan2(loadings[:, 1], loadings[:, 0])) % 360.0


def _circular_mean(angles: list[float]) -> float | None:
    s = sum(math.sin(math.radians(a)) for a in angles)
    c = sum(math.cos(math.radians(a)) for a in angles)
    if math.hypot(s, c) < 1e-12:
        return None
    return math.degrees(math.atan2(s, c)) % 360.0


def cluster_machines(
    angles: np.ndarray,
    cfg: ClusterConfig,
    machine_labels: tuple[str, ...],
) -> tuple[tuple[int, ...], frozenset[str], list[str]]:
    """Split the angle circle into cells; flag and move outlier machines.

    Returns (cell index per machine, exceptional machine labels, warnings).
    Cells are numbered 1..N by their smallest member machine index.
    """
    m = len(angles)
    if m < 2:
        raise ClusteringError("need at least 2 machines to cluster")
    order = list(np.argsort(angles, kind="stable"))
    sorted_angles = [float(angles[i]) for i in order]
    # gaps[i] is the gap after sorted position i (wrapping at the end)
    gaps = [
        (sorted_angles[(i + 1) % m] - sorted_angles[i]) % 360.0 if i < m - 1
        else (sorted_angles[0] + 360.0 - sorted_angles[m - 1])
        for i in range(m)
    ]
    n_distinct = len({round(a, 9) for a in sorted_angles})

    if cfg.n_cells is not None:
        if cfg.n_cells > m:
            raise ClusteringError(f"cannot form {cfg.n_cells} cells from {m} machines")
        if cfg.n_cells > n_distinct:
            raise ClusteringError(
                f"cannot form {cfg.n_cells} cells: only {n_distinct} distinct "
                "loading directions (no gaps to split)"
            )
        if cfg.n_cells == 1:
            splits: list[int] = []
        else:
            ranked = sorted(range(m), key=lambda i: (-gaps[i], i))
            splits = sorted(ranked[: cfg.n_cells])
    else:
        splits = [i for i in range(m) if gaps[i] > cfg.gap_threshold_deg]

    if not splits:
        arcs = [list(order)]
    else:
        arcs = []
        for a, b in zip(splits, splits[1:] + [splits[0] + m]):
            arcs.append([order[(i + 1) % m] for i in range(a, b)])

    cell_of = {}
    for arc_id, members in enumerate(arcs):
        for j in members:
            cell_of[j] = arc_id

    warnings: list[str] = []
    exceptional: set[str] = set()
    if len(arcs) >= 2:
        for arc_id, members in enumerate(arcs):
            _resolve_wide_arc(
                arc_id, members, arcs, angles, cfg, machine_labels,
                cell_of, exceptional, warnings,
            )
    else:
        spread = _arc_spread(arcs[0], angles)
        if spread >= cfg.independence_deg:
            warnings.append(
                f"single cell spans {spread:.1f} degrees, at or above the "
                f"independence threshold of {cfg.independence_deg:.1f}"
            )

    # number cells 1..N by smallest member machine index
    members_by_arc: dict[int, list[int]] = {}
    for j, arc_id in cell_of.items():
        members_by_arc.setdefault(arc_id, []).append(j)
    arc_order = sorted(members_by_arc, key=lambda arc_id: min(members_by_arc[arc_id]))
    renumber = {arc_id: rank + 1 for rank, arc_id in enumerate(arc_order)}
    machine_cell = tuple(renumber[cell_of[j]] for j in range(m))
    return machine_cell, frozenset(exceptional), warnings


def _arc_spread(members: list[int], angles: np.ndarray) -> float:
    """Angular span of a contiguous arc, first member to last."""
    if len(members) < 2:
        return 0.0
    return (float(angles[members[-1]]) - float(angles[members[0]])) % 360.0


def _resolve_wide_arc(
    arc_id, members, arcs, angles, cfg, machine_labels, cell_of, exceptional, warnings
):
    """Apply the exceptional-machine rule to one arc, mutating cell_of."""
    spread = _arc_spread(members, angles)
    if spread < cfg.independence_deg:
        return
    candidates = []
    for endpoint in (members[0], members[-1]):
        rest = [j for j in members if j != endpoint]
        new_spread = _arc_spread(rest, angles)
        if new_spread < cfg.independence_deg:
            candidates.append((new_spread, endpoint))
    if not candidates:
        warnings.append(
            f"cell of machines {{{', '.join(machine_labels[j] for j in members)}}} "
            f"spans {spread:.1f} degrees, at or above the independence "
            f"threshold of {cfg.independence_deg:.1f}"
        )
        return
    _, outlier = min(candidates, key=lambda c: (c[0], c[1]))
    n_arcs = len(arcs)
    neighbor_ids = {(arc_id - 1) % n_arcs, (arc_id + 1) % n_arcs} - {arc_id}
    best = None
    for nid in sorted(neighbor_ids):
        mean = _circular_mean([float(angles[j]) for j in arcs[nid]])
        dist = 180.0 if mean is None else circular_distance(float(angles[outlier]), mean)
        if best is None or dist < best[0]:
            best = (dist, nid)
    exceptional.add(machine_labels[outlier])
    cell_of[outlier] = best[1]


def assign_parts(
    inst: Instance,
    plane: PrincipalPlane,
    machine_cell: tuple[int, ...],
) -> tuple[tuple[int, ...], frozenset[str], list[str]]:
    """Assign each part to the cell of its angularly nearest used machine.

    The distance is between the part's score direction and the machine's
    loading treated as an undirected line, so anti-aligned parts still
    match. A part whose machines span several cells is exceptional. Parts
    with a near-zero score fall back to counting operations per cell.
    """
    mang = machine_angles(plane, inst.machine_labels)
    scores = plane.part_scores
    n_cells = max(machine_cell)
    part_family: list[int] = []
    exceptional: set[str] = set()

    for i, label in enumerate(inst.part_labels):
        used = [j for j in range(inst.n_machines) if inst.incidence[i, j] == 1]
        ops_per_cell: dict[int, int] = {}
        for j in used:
            ops_per_cell[machine_cell[j]] = ops_per_cell.get(machine_cell[j], 0) + 1
        if len(ops_per_cell) > 1:
            exceptional.add(label)

        if math.hypot(scores[i, 0], scores[i, 1]) < ZERO_NORM:
            family = min(ops_per_cell, key=lambda c: (-ops_per_cell[c], c))
        else:
            score_angle = math.degrees(math.atan2(scores[i, 1], scores[i, 0])) % 360.0
            dists = {j: line_distance(score_angle, float(mang[j])) for j in used}
            dmin = min(dists.values())
            tied_cells = {machine_cell[j] for j in used if dists[j] == dmin}
            family = min(tied_cells, key=lambda c: (-ops_per_cell[c], c))
        part_family.append(family)

    warnings = [
        f"family {k} is empty: no part gravitates to cell {k}"
        for k in range(1, n_cells + 1)
        if k not in part_family
    ]
    return tuple(part_family), frozenset(exceptional), warnings


@dataclass(frozen=True)
class SolveResult:
    """Every artifact of one pipeline run, for export and inspection."""

    instance: Instance
    config: ClusterConfig
    stats: MachineStats
    standardized: StandardizedMatrix
    similarity: SimilarityMatrix
    eigensystem: EigenSystem
    plane: PrincipalPlane
    solution: CellSolution


def run_pipeline(inst: Instance, cfg: ClusterConfig | None = None) -> SolveResult:
    """Run the whole two-phase pipeline on one instance."""
    cfg = cfg or ClusterConfig()
    stats = machine_stats(inst)
    b = standardize(inst, stats)
    sim = correlation_matrix(b, inst.machine_labels)
    es = eigendecompose(sim)
    plane = principal_plane(inst, b, es)

    warnings: list[str] = []
    if plane.degenerate:
        warnings.append(
            "principal plane is degenerate (second eigenvalue is ~0); "
            "angular clustering is unreliable"
        )
    angles = machine_angles(plane, inst.machine_labels)
    machine_cell, exc_machines, w1 = cluster_machines(angles, cfg, inst.machine_labels)
    part_family, exc_parts, w2 = assign_parts(inst, plane, machine_cell)
    solution = CellSolution(
        machine_labels=inst.machine_labels,
        part_labels=inst.part_labels,
        machine_cell=machine_cell,
        part_family=part_family,
        exceptional_machines=exc_machines,
        exceptional_parts=exc_parts,
        n_cells=max(machine_cell),
        warnings=tuple(warnings + w1 + w2),
    )
    return SolveResult(
        instance=inst, config=cfg, stats=stats, standardized=b,
        similarity=sim, eigensystem=es, plane=plane, solution=solution,
    )


def solve(inst: Instance, cfg: ClusterConfig | None = None) -> CellSolution:
    """Machine cells and part families for one instance (pipeline shorthand)."""
    return run_pipeline(inst, cfg).solution
