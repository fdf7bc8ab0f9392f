"""Eigendecomposition of the similarity matrix and the principal plane.

The full spectrum is computed with cyclic Jacobi rotations, which for the
small symmetric matrices of this problem (tens of machines) are simple,
robust, and deliver orthonormal eigenvectors directly. Machine loadings
are the rows of the first two eigenvectors; part scores are projections
of the standardized part rows onto the same two eigenvectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .instance import Instance
from .similarity import SimilarityMatrix, StandardizedMatrix

JACOBI_SWEEP_CAP = 100
JACOBI_OFF_NORM_TOL = 1e-12
DEGENERATE_EIGENVALUE = 1e-9


class ConvergenceError(ArithmeticError):
    """Jacobi iteration failed to reduce the off-diagonal norm in time."""


@dataclass(frozen=True)
class EigenSystem:
    """Full spectrum, eigenvalues descending, eigenvectors orthonormal.

    ``eigenvectors[:, k]`` is the unit eigenvector for ``eigenvalues[k]``,
    oriented so its largest-magnitude entry is positive (ties broken by
    the lowest machine index), which makes the decomposition a pure
    function of the input matrix.
    """

    eigenvalues: np.ndarray   # shape (m,)
    eigenvectors: np.ndarray  # shape (m, m), columns aligned with eigenvalues


@dataclass(frozen=True)
class PrincipalPlane:
    """Coordinates of machines and parts on the first two components."""

    machine_loadings: np.ndarray  # shape (m, 2), rows of the top-2 eigenvectors
    part_scores: np.ndarray       # shape (p, 2), standardized rows dotted with them
    explained_variance: float     # (lambda_1 + lambda_2) / m, in [0, 1]
    degenerate: bool              # lambda_2 below DEGENERATE_EIGENVALUE


def _off_norm(a: np.ndarray) -> float:
    """Frobenius norm of the off-diagonal part, summed directly.

    Summing squares of the off entries (rather than subtracting the
    diagonal mass from the total) avoids the cancellation that would
    otherwise floor the computable norm near 1e-8 for unit-scale input.
    """
    return math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))


def jacobi_eigh(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalization of a symmetric matrix.

    Returns (eigenvalues, eigenvectors) unsorted, eigenvectors as columns.
    Convergence is an off-diagonal Frobenius norm below 1e-12; the sweep
    cap is unreachable for genuinely symmetric input.
    """
    a = np.array(matrix, dtype=np.float64)
    m = a.shape[0]
    v = np.eye(m)
    if m == 1:
        return np.array([a[0, 0]]), v

    for _ in range(JACOBI_SWEEP_CAP):
        if _off_norm(a) < JACOBI_OFF_NORM_TOL:
            return np.diag(a).copy(), v
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(tau, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q

    off = _off_norm(a)
    if off < JACOBI_OFF_NORM_TOL:
        return np.diag(a).copy(), v
    raise ConvergenceError(
        f"Jacobi did not converge in {JACOBI_SWEEP_CAP} sweeps "
        f"(off-diagonal norm {off:.3e}); input is not symmetric?"
    )


def eigendecompose(sim: SimilarityMatrix) -> EigenSystem:
    """Full sorted spectrum of the similarity matrix, deterministic signs."""
    values, vectors = jacobi_eigh(sim.entries)
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]
    for k in range(vectors.shape[1]):
        lead = int(np.argmax(np.abs(vectors[:, k])))
        if vectors[lead, k] < 0:
            vectors[:, k] = -vectors[:, k]
    return EigenSystem(eigenvalues=values, eigenvectors=vectors)


def principal_plane(
    inst: Instance, b: StandardizedMatrix, es: EigenSystem
) -> PrincipalPlane:
    """Machine loadings and part scores on the top two components."""
    m = inst.n_machines
    if es.eigenvectors.shape != (m, m) or b.values.shape != (inst.n_parts, m):
        raise ValueError("instance, standardized matrix and eigensystem disagree on size")
    top2 = es.eigenvectors[:, :2]
    return PrincipalPlane(
        machine_loadings=top2.copy(),
        part_scores=b.values @ top2,
        explained_variance=float(es.eigenvalues[:2].sum()) / m,
        degenerate=bool(es.eigenvalues[1] < DEGENERATE_EIGENVALUE),
    )
