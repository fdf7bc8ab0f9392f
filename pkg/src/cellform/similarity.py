"""Column standardization and the correlation similarity matrix.

Machines are columns of the incidence matrix. Each column is centered by
its mean and divided by its population standard deviation; the similarity
of two machines is then the mean product of their standardized columns,
i.e. the Pearson correlation of the raw 0/1 columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

import numpy as np

from .instance import Instance


@dataclass(frozen=True)
class MachineStats:
    """Per-machine column mean and population standard deviation."""

    mean: np.ndarray   # shape (m,), values in (0, 1)
    sigma: np.ndarray  # shape (m,), values in (0, 0.5]


@dataclass(frozen=True)
class StandardizedMatrix:
    """Incidence matrix with zero-mean, unit-variance machine columns."""

    values: np.ndarray  # shape (p, m), float64


@dataclass(frozen=True)
class SimilarityMatrix:
    """Symmetric unit-diagonal machine-machine correlation matrix."""

    entries: np.ndarray  # shape (m, m), float64
    machine_labels: tuple[str, ...]

    @property
    def size(self) -> int:
        return self.entries.shape[0]


def machine_stats(inst: Instance) -> MachineStats:
    """Column means and population (divide-by-p) standard deviations.

    For a 0/1 column the variance is mean*(1 - mean); constant columns are
    rejected at Instance construction, so sigma is always positive.
    """
    mean = inst.incidence.mean(axis=0)
    sigma = np.sqrt(mean * (1.0 - mean))
    return MachineStats(mean=mean, sigma=sigma)


def standardize(inst: Instance, stats: MachineStats) -> StandardizedMatrix:
    """Center and scale each machine column: b = (a - mean) / sigma."""
    values = (inst.incidence.astype(np.float64) - stats.mean) / stats.sigma
    return StandardizedMatrix(values=values)


def correlation_matrix(
    b: StandardizedMatrix, machine_labels: tuple[str, ...]
) -> SimilarityMatrix:
    """Mean cross-product of standardized columns, symmetrized exactly.

    Only the lower triangle is computed; it is mirrored so the matrix is
    symmetric to the bit, and the diagonal is assigned exactly 1 rather
    than recomputed.
    """
    values = b.values
    p, m = values.shape
    s = np.zeros((m, m))
    for i in range(m):
        for j in range(i):
            s[i, j] = s[j, i] = float(values[:, i] @ values[:, j]) / p
        s[i, i] = 1.0
    return SimilarityMatrix(entries=s, machine_labels=tuple(machine_labels))


def similarity_from_instance(inst: Instance) -> SimilarityMatrix:
    """Convenience composition of the whole first phase."""
    stats = machine_stats(inst)
    return correlation_matrix(standardize(inst, stats), inst.machine_labels)


def round_half_away(value: float, ndigits: int = 2) -> float:
    """Display rounding: half-way cases go away from zero.

    The value is first snapped to 12 decimals so that accumulated float
    noise around an exact half-way point (e.g. a correlation of exactly
    -0.375 computed as -0.37499999999999994) does not flip the displayed
    digit.
    """
    snapped = Decimal(repr(round(float(value), 12)))
    quantum = Decimal(1).scaleb(-ndigits)
    return float(snapped.quantize(quantum, rounding=ROUND_HALF_UP))


def similarity_csv(sim: SimilarityMatrix) -> str:
    """Full square matrix as CSV: header row of labels, 6-decimal values."""
    lines = ["," + ",".join(sim.machine_labels)]
    for label, row in zip(sim.machine_labels, sim.entries):
        lines.append(label + "," + ",".join(f"{v:.6f}" for v in row))
    return "\n".join(lines) + "\n"
