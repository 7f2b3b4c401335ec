"""Edge-skeleton identification and edge/hyperplane intersection points.

A pair of extreme points forms an edge exactly when their midpoint cannot be
written as a convex combination of the generators once either endpoint is
excluded.  Edges whose endpoints straddle a coordinate hyperplane contribute
the crossing point, which later becomes a vertex of the per-orthant pieces.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import ContractViolationError, SolverFailureError
from .feasibility import DEFAULT_LP_TOL, CombinationSolver
from .vpolytope import VertexSet

DEFAULT_SIGN_EPS = 1e-9

_LAMBDA_SLACK = 1e-9


@dataclass(frozen=True)
class EdgeSkeleton:
    """Upper-triangular adjacency: adjacency[i] holds every j > i such that
    (v_i, v_j) is an edge of conv(V)."""

    adjacency: tuple[frozenset[int], ...]

    def edges(self) -> Iterator[tuple[int, int]]:
        for i, neighbours in enumerate(self.adjacency):
            for j in sorted(neighbours):
                yield i, j

    def num_edges(self) -> int:
        return sum(len(s) for s in self.adjacency)


@dataclass(frozen=True)
class SignVector:
    """Componentwise sign classification over {-1, 0, +1}."""

    entries: np.ndarray

    def __post_init__(self):
        e = np.array(self.entries, dtype=np.int8)
        e.flags.writeable = False
        object.__setattr__(self, "entries", e)


def sign_of(x: np.ndarray, sign_eps: float = DEFAULT_SIGN_EPS) -> SignVector:
    """+1 above the tolerance band, -1 below it, 0 inside it."""
    if sign_eps < 0:
        raise ContractViolationError(f"sign_eps must be nonnegative, got {sign_eps}")
    x = np.asarray(x, dtype=float)
    entries = np.zeros(x.shape, dtype=np.int8)
    entries[x > sign_eps] = 1
    entries[x < -sign_eps] = -1
    return SignVector(entries)


def identify_edges(vset: VertexSet,
                   lp_tol: float = DEFAULT_LP_TOL,
                   workers: int = 1) -> EdgeSkeleton:
    """Compute the 1-skeleton of conv(V) for a deduplicated extreme-point set.

    (i, j) is an edge iff both midpoint queries, one excluding each endpoint,
    are infeasible.  Rows are independent, so they may be computed by several
    workers; results are concatenated in index order either way.
    """
    pts = vset.points
    o = pts.shape[0]
    solver = CombinationSolver(pts)

    def row(i: int) -> frozenset[int]:
        neighbours = set()
        for j in range(i + 1, o):
            midpoint = 0.5 * (pts[i] + pts[j])
            try:
                if not solver.feasible(midpoint, {i}, lp_tol) and \
                   not solver.feasible(midpoint, {j}, lp_tol):
                    neighbours.add(j)
            except SolverFailureError as exc:
                raise SolverFailureError(
                    f"adjacency query failed for vertex pair ({i}, {j}): {exc}"
                ) from exc
        return frozenset(neighbours)

    if workers > 1 and o > 2:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, range(o)))
    else:
        rows = [row(i) for i in range(o)]
    return EdgeSkeleton(tuple(rows))


def intersect_edges(vset: VertexSet, skeleton: EdgeSkeleton,
                    sign_eps: float = DEFAULT_SIGN_EPS) -> VertexSet:
    """Append the crossing point of every edge with every coordinate
    hyperplane it straddles.

    For edge (i, j) and coordinate k where the sign difference reaches 2, the
    crossing parameter is lam = -v_ik / (v_jk - v_ik) and the point is
    v_i + lam * (v_j - v_i) with coordinate k snapped to exactly 0.  Points
    are appended in (i, j, k) lexicographic order after the originals.
    """
    pts = vset.points
    if len(skeleton.adjacency) != pts.shape[0]:
        raise ContractViolationError(
            f"skeleton has {len(skeleton.adjacency)} rows for {pts.shape[0]} vertices")
    signs = np.stack([sign_of(p, sign_eps).entries for p in pts])
    appended: list[np.ndarray] = []
    for i, j in skeleton.edges():
        diff = signs[i].astype(int) - signs[j].astype(int)
        for k in np.nonzero(np.abs(diff) >= 2)[0]:
            denom = pts[j, k] - pts[i, k]
            lam = -pts[i, k] / denom
            if lam < -_LAMBDA_SLACK or lam > 1.0 + _LAMBDA_SLACK:
                raise ContractViolationError(
                    f"crossing parameter {lam} outside [0, 1] for edge ({i}, {j}), "
                    f"coordinate {k}")
            point = pts[i] + lam * (pts[j] - pts[i])
            point[k] = 0.0
            appended.append(point)
    if not appended:
        return vset
    return VertexSet(np.vstack([pts, np.stack(appended)]))
