"""Scikit-learn style front door for the cell-formation pipeline.

``CellFormation`` behaves like the library's biclustering estimators:
``fit`` takes the binary incidence matrix (rows are parts, columns are
machines) and exposes ``row_labels_`` / ``column_labels_`` plus the full
domain solution, so it drops into pipelines, ``clone``, and grid search.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from .clustering import ClusterConfig, run_pipeline
from .instance import Instance, default_labels


class CellFormation(BaseEstimator):
    """Machine-part coclustering via correlation PCA and angular splitting.

    Parameters
    ----------
    n_cells : int or None
        Exact number of cells, or None to derive it from angular gaps.
    gap_threshold_deg : float
        Minimum circular gap that separates cells when n_cells is None.
    independence_deg : float
        Intra-cell angular spread beyond which one outlying machine is
        flagged exceptional and moved to a neighboring cell.

    Attributes
    ----------
    row_labels_ : ndarray of shape (n_parts,)
        Zero-based family index per part (row of X).
    column_labels_ : ndarray of shape (n_machines,)
        Zero-based cell index per machine (column of X).
    n_cells_ : int
    solution_ : CellSolution
    instance_ : Instance
    similarity_ : ndarray of shape (n_machines, n_machines)
    eigenvalues_ : ndarray of shape (n_machines,)
    explained_variance_ : float
    machine_loadings_ : ndarray of shape (n_machines, 2)
    part_scores_ : ndarray of shape (n_parts, 2)
    """

    def __init__(self, n_cells=None, gap_threshold_deg=60.0, independence_deg=90.0):
        self.n_cells = n_cells
        self.gap_threshold_deg = gap_threshold_deg
        self.independence_deg = independence_deg

    def fit(self, X, y=None, machine_labels=None, part_labels=None):
        """Cluster the incidence matrix X (parts in rows, machines in columns)."""
        X = check_array(X, dtype="numeric")
        p, m = X.shape
        inst = Instance(
            machine_labels=tuple(machine_labels) if machine_labels else default_labels("M", m),
            part_labels=tuple(part_labels) if part_labels else default_labels("P", p),
            incidence=X,
        )
        cfg = ClusterConfig(
            n_cells=self.n_cells,
            gap_threshold_deg=self.gap_threshold_deg,
            independence_deg=self.independence_deg,
        )
        result = run_pipeline(inst, cfg)
        sol = result.solution
        self.instance_ = inst
        self.solution_ = sol
        self.row_labels_ = np.asarray(sol.part_family) - 1
        self.column_labels_ = np.asarray(sol.machine_cell) - 1
        self.n_cells_ = sol.n_cells
        self.similarity_ = result.similarity.entries
        self.eigenvalues_ = result.eigensystem.eigenvalues
        self.explained_variance_ = result.plane.explained_variance
        self.machine_loadings_ = result.plane.machine_loadings
        self.part_scores_ = result.plane.part_scores
        return self

    def fit_predict(self, X, y=None, **fit_params):
        """Fit and return the zero-based machine cell labels."""
        return self.fit(X, y, **fit_params).column_labels_

    def get_indices(self, i):
        """Row and column indices of bicluster i (zero-based cell index)."""
        check_is_fitted(self, "solution_")
        return (
            np.nonzero(self.row_labels_ == i)[0],
            np.nonzero(self.column_labels_ == i)[0],
        )
