"""Shared test data and independent oracles.

The counting oracle here is deliberately a second implementation (plain
Python loops over every part-machine pair) so that the package's
vectorized metrics have something genuinely independent to agree with.
"""

from __future__ import annotations

import numpy as np

from cellform import CellSolution, ClusteringError, Instance, InstanceError, solve
from cellform.instance import default_labels

# Published ground truth for the worked 7x11 instance, rounded to two
# decimals (half away from zero), keyed by 1-based machine numbers.
BOCTOR_SIMILARITY_LOWER = {
    (2, 1): -0.04,
    (3, 1): -0.46, (3, 2): 0.54,
    (4, 1): -0.46, (4, 2): -0.38, (4, 3): -0.38,
    (5, 1): 0.62, (5, 2): -0.29, (5, 3): -0.29, (5, 4): -0.29,
    (6, 1): 0.39, (6, 2): -0.38, (6, 3): -0.38, (6, 4): 0.08, (6, 5): 0.24,
    (7, 1): -0.46, (7, 2): -0.38, (7, 3): -0.38, (7, 4): 0.54,
    (7, 5): -0.29, (7, 6): -0.38,
}

BOCTOR_CELLS = [{"M2", "M3"}, {"M1", "M5", "M6"}, {"M4", "M7"}]
BOCTOR_FAMILIES = [{"P1", "P2", "P6", "P9"}, {"P3", "P7", "P11"}, {"P4", "P5", "P8", "P10"}]

# The published assignment, with cells numbered by smallest machine index.
BOCTOR_MACHINE_CELL = {"M1": 1, "M5": 1, "M6": 1, "M2": 2, "M3": 2, "M4": 3, "M7": 3}
BOCTOR_PART_FAMILY = {
    "P3": 1, "P7": 1, "P11": 1,
    "P1": 2, "P2": 2, "P6": 2, "P9": 2,
    "P4": 3, "P5": 3, "P8": 3, "P10": 3,
}


def reference_counts(inst: Instance, sol: CellSolution) -> dict[str, float]:
    """Pair-by-pair recount of UE/EE/VE and the three percentages."""
    ue = ee = ve = 0
    for i in range(inst.n_parts):
        for j in range(inst.n_machines):
            inside = sol.part_family[i] == sol.machine_cell[j]
            if inst.incidence[i, j] == 1:
                ue += 1
                if not inside:
                    ee += 1
            elif inside:
                ve += 1
    denominator = 0
    for k in set(sol.machine_cell):
        m_k = sum(1 for c in sol.machine_cell if c == k)
        p_k = sum(1 for f in sol.part_family if f == k)
        denominator += m_k * p_k
    return {
        "ue": ue, "ee": ee, "ve": ve, "denominator_mu": denominator,
        "pe": 100.0 * ee / ue,
        "mu": 100.0 * (ue - ee) / denominator if denominator else 0.0,
        "ge": 100.0 * (ue - ee) / (ue + ve),
    }


def random_instance(
    rng: np.random.Generator, max_machines: int = 10, max_parts: int = 20
) -> Instance:
    """A valid random binary instance (no empty parts, no constant columns)."""
    while True:
        m = int(rng.integers(2, max_machines + 1))
        p = int(rng.integers(2, max_parts + 1))
        density = float(rng.uniform(0.15, 0.5))
        a = (rng.random((p, m)) < density).astype(np.int8)
        for i in range(p):
            if a[i].sum() == 0:
                a[i, int(rng.integers(0, m))] = 1
        for j in range(m):
            if a[:, j].sum() == 0:
                a[int(rng.integers(0, p)), j] = 1
            elif a[:, j].sum() == p:
                a[int(rng.integers(0, p)), j] = 0
        try:
            return Instance(default_labels("M", m), default_labels("P", p), a)
        except InstanceError:
            continue


def try_solve(inst: Instance) -> CellSolution | None:
    """Solve, or None when the angular method cannot orient a machine
    (a zero loading on the principal plane is a legitimate rejection)."""
    try:
        return solve(inst)
    except ClusteringError:
        return None


def random_corpus(seed: int, size: int, **kwargs) -> list[Instance]:
    """Instances the full pipeline can run on.

    The angular method cannot orient a machine whose loading is exactly
    zero (one uncorrelated with every other); such draws are rejected
    here because every corpus-wide check needs an end-to-end solve.
    """
    rng = np.random.default_rng(seed)
    corpus: list[Instance] = []
    while len(corpus) < size:
        inst = random_instance(rng, **kwargs)
        if try_solve(inst) is None:
            continue
        corpus.append(inst)
    return corpus
