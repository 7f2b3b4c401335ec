"""Convex-combination feasibility oracle.

Every geometric question this package asks (vertex adjacency, internal-point
removal, origin membership, polytope membership) reduces to one query: does a
target point admit a convex combination of a given generator set, with some
generators forced to zero weight?  This module answers that query with a
dense phase-1 simplex run on a row-reduced equality system, so that all LP
numerics live in one place.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Collection, Iterable

import numpy as np

from .errors import ContractViolationError, SolverFailureError

DEFAULT_LP_TOL = 1e-7

_PIVOT_EPS = 1e-11


@dataclass(frozen=True)
class FeasibilityQuery:
    """One convex-combination query.

    ``vertex_matrix`` holds the ``o`` candidate generators as rows of an
    ``o x n`` matrix.  The query asks for weights ``lam`` with
    ``sum(lam) == 1``, ``lam >= 0``, ``lam[i] == 0`` for every
    ``i in zeroed_indices`` (0-based), and ``vertex_matrix.T @ lam == target``.
    """

    vertex_matrix: np.ndarray
    target: np.ndarray
    zeroed_indices: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "vertex_matrix",
                           np.asarray(self.vertex_matrix, dtype=float))
        object.__setattr__(self, "target", np.asarray(self.target, dtype=float))
        object.__setattr__(self, "zeroed_indices", frozenset(self.zeroed_indices))


def _phase1_feasible(A: np.ndarray, b: np.ndarray, tol: float) -> bool:
    """Phase-1 simplex: is {lam >= 0 : A lam = b} nonempty within tol?

    Minimizes the L1 residual of the equalities via artificial variables.
    Dantzig pricing with a Bland fallback for anti-cycling; an exceeded
    iteration cap signals numerical failure, never infeasibility.
    """
    m, n_cols = A.shape
    if n_cols == 0:
        return float(np.linalg.norm(b)) <= tol

    flip = b < 0
    T = np.empty((m, n_cols + 1))
    T[:, :n_cols] = np.where(flip[:, None], -A, A)
    T[:, -1] = np.abs(b)
    artificial = np.ones(m, dtype=bool)

    bland_after = 100 + 20 * (m + n_cols)
    max_iter = 400 + 60 * (m + n_cols)

    for it in range(max_iter):
        if not artificial.any():
            return True
        reduced = -T[artificial, :n_cols].sum(axis=0)
        if it < bland_after:
            j = int(np.argmin(reduced))
            if reduced[j] >= -_PIVOT_EPS:
                break
        else:
            negatives = np.nonzero(reduced < -_PIVOT_EPS)[0]
            if negatives.size == 0:
                break
            j = int(negatives[0])

        col = T[:, j]
        positive = col > _PIVOT_EPS
        if not positive.any():
            # Phase-1 objective is bounded below by zero, so an apparent
            # unbounded ray means the numerics have degraded.
            break
        ratios = np.full(m, np.inf)
        ratios[positive] = T[positive, -1] / col[positive]
        best = ratios.min()
        ties = np.nonzero(ratios <= best + _PIVOT_EPS * (1.0 + abs(best)))[0]
        # Prefer driving an artificial variable out of the basis.
        art_ties = ties[artificial[ties]]
        i = int(art_ties[0]) if art_ties.size else int(ties[0])

        pivot_row = T[i] / T[i, j]
        col_vals = T[:, j].copy()
        col_vals[i] = 0.0
        T -= np.outer(col_vals, pivot_row)
        T[i] = pivot_row
        T[:, j] = 0.0
        T[i, j] = 1.0
        artificial[i] = False
        rhs = T[:, -1]
        np.clip(rhs, 0.0, None, out=rhs)
    else:
        raise SolverFailureError(
            f"phase-1 simplex exceeded {max_iter} iterations "
            f"on a {m}x{n_cols} system")

    objective = float(T[artificial, -1].sum())
    return objective <= tol


class CombinationSolver:
    """Reusable solver for many queries against one generator set.

    Precomputes an orthonormal row-space reduction of the stacked system
    ``[points.T; ones]`` so each query runs a phase-1 simplex on at most
    ``rank + 1`` rows instead of ``n + 1``.  Removing generators (the
    ``zeroed`` argument) never invalidates the reduction.
    """

    def __init__(self, points: np.ndarray, rank_tol: float = 1e-12):
        points = np.asarray(points, dtype=float)
        if points.ndim != 2 or points.shape[0] < 1:
            raise ContractViolationError(
                f"generator matrix must be o x n with o >= 1, got shape {points.shape}")
        o, n = points.shape
        system = np.empty((n + 1, o))
        system[:n] = points.T
        system[n] = 1.0
        u, s, _ = np.linalg.svd(system, full_matrices=False)
        keep = s > max(s[0] * rank_tol, 1e-300)
        self._basis = u[:, keep]
        self._rows = (self._basis.T @ system) / s[keep, None]
        self._singulars = s[keep]
        self.num_generators = o
        self.dim = n

    def feasible(self, target: np.ndarray,
                 zeroed: Collection[int] = (),
                 tol: float = DEFAULT_LP_TOL) -> bool:
        target = np.asarray(target, dtype=float)
        if target.shape != (self.dim,):
            raise ContractViolationError(
                f"target has shape {target.shape}, expected ({self.dim},)")
        rhs_full = np.append(target, 1.0)
        coeff = self._basis.T @ rhs_full
        residual = rhs_full - self._basis @ coeff
        scale = max(1.0, float(np.linalg.norm(rhs_full)))
        if float(np.linalg.norm(residual)) > tol * scale:
            # Target lies outside the affine hull of the generators.
            return False
        rhs = coeff / self._singulars
        rows = self._rows
        if zeroed:
            mask = np.ones(self.num_generators, dtype=bool)
            mask[list(zeroed)] = False
            rows = rows[:, mask]
        return _phase1_feasible(rows, rhs, tol)


def convex_combination_exists(query: FeasibilityQuery,
                              tol: float = DEFAULT_LP_TOL) -> bool:
    """True iff the query's feasibility system has a solution within tol.

    Pure; raises :class:`ContractViolationError` on inconsistent dimensions
    and :class:`SolverFailureError` when the simplex cannot conclude.
    """
    matrix = query.vertex_matrix
    if matrix.ndim != 2:
        raise ContractViolationError(
            f"vertex_matrix must be 2-D, got shape {matrix.shape}")
    o, n = matrix.shape
    if o < 1 or n < 1:
        raise ContractViolationError(
            f"need o >= 1 generators of dimension n >= 1, got shape {matrix.shape}")
    if query.target.shape != (n,):
        raise ContractViolationError(
            f"target has shape {query.target.shape}, expected ({n},)")
    if not all(0 <= i < o for i in query.zeroed_indices):
        raise ContractViolationError(
            f"zeroed_indices {sorted(query.zeroed_indices)} out of range 0..{o - 1}")
    if not tol > 0:
        raise ContractViolationError(f"tol must be positive, got {tol}")
    solver = CombinationSolver(matrix)
    return solver.feasible(query.target, query.zeroed_indices, tol)
