"""V-polytope data type and per-point maps.

A :class:`VertexSet` is an immutable ordered collection of n-dimensional
points whose convex hull is the polytope it represents.  The maps here act
pointwise (affine image, componentwise ReLU) or prune the collection down to
its extreme points via the feasibility oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ContractViolationError
from .feasibility import DEFAULT_LP_TOL, CombinationSolver

DEFAULT_DEDUP_TOL = 1e-9


@dataclass(frozen=True)
class VertexSet:
    """Ordered vertex collection of a V-polytope (o points in R^n)."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2:
            raise ContractViolationError(
                f"points must be an o x n array, got shape {pts.shape}")
        if pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ContractViolationError(
                f"need at least one point of dimension >= 1, got shape {pts.shape}")
        if not np.isfinite(pts).all():
            raise ContractViolationError("points must be finite")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_points(cls, points: Iterable[Sequence[float]]) -> "VertexSet":
        return cls(np.atleast_2d(np.asarray(list(points), dtype=float)))

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]

    def __eq__(self, other) -> bool:
        return (isinstance(other, VertexSet)
                and self.points.shape == other.points.shape
                and bool(np.array_equal(self.points, other.points)))

    def __hash__(self):
        return hash((self.points.shape, self.points.tobytes()))


@dataclass(frozen=True)
class LayerParams:
    """Weights (m x n) and biases (m,) of one fully connected layer."""

    weights: np.ndarray
    biases: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        b = np.array(self.biases, dtype=float)
        if w.ndim != 2 or b.ndim != 1 or w.shape[0] != b.shape[0]:
            raise ContractViolationError(
                f"weights {w.shape} and biases {b.shape} are inconsistent")
        if not (np.isfinite(w).all() and np.isfinite(b).all()):
            raise ContractViolationError("layer parameters must be finite")
        w.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "biases", b)

    @property
    def in_dim(self) -> int:
        return self.weights.shape[1]

    @property
    def out_dim(self) -> int:
        return self.weights.shape[0]


def affine_map(vset: VertexSet, params: LayerParams) -> VertexSet:
    """Map every point through W v + theta, preserving order and count."""
    if params.in_dim != vset.dim:
        raise ContractViolationError(
            f"layer expects dimension {params.in_dim}, polytope has {vset.dim}")
    return VertexSet(vset.points @ params.weights.T + params.biases)


def relu_map(vset: VertexSet) -> VertexSet:
    """Clamp every coordinate to max(0, x); negative zero normalizes to 0."""
    return VertexSet(np.maximum(vset.points, 0.0) + 0.0)


def dedup_vertices(vset: VertexSet, tol: float = DEFAULT_DEDUP_TOL) -> VertexSet:
    """Keep the first occurrence of each point, dropping later points within
    Euclidean distance tol of a kept one."""
    if tol < 0:
        raise ContractViolationError(f"tol must be nonnegative, got {tol}")
    pts = vset.points
    o = pts.shape[0]
    if o == 1:
        return vset
    if o > 5000:
        # Large sets arise from ReLU collapses, where duplicates are exact;
        # a byte-level pass removes them before the pairwise sweep.
        decimals = max(0, int(-np.floor(np.log10(tol)))) if tol > 0 else 12
        rounded = np.round(pts, decimals)
        _, first = np.unique(rounded, axis=0, return_index=True)
        keep_idx = np.sort(first)
        pts = pts[keep_idx]
        o = pts.shape[0]
        if o > 5000:
            return VertexSet(pts)
    kept: list[int] = []
    kept_pts = np.empty_like(pts)
    for i in range(o):
        if kept:
            dists = np.linalg.norm(kept_pts[:len(kept)] - pts[i], axis=1)
            if dists.min() <= tol:
                continue
        kept_pts[len(kept)] = pts[i]
        kept.append(i)
    if len(kept) == vset.points.shape[0]:
        return vset
    return VertexSet(kept_pts[:len(kept)].copy())


def remove_internal_points(vset: VertexSet,
                           tol: float = DEFAULT_LP_TOL) -> VertexSet:
    """Keep only the extreme points of conv(V).

    Each candidate is tested against the currently retained set (survivors so
    far plus all not-yet-tested points) and removed immediately when it is a
    convex combination of them.  Input must be deduplicated first, otherwise
    duplicate pairs delete each other.
    """
    pts = vset.points
    o = pts.shape[0]
    if o == 1:
        return vset
    solver = CombinationSolver(pts)
    removed: set[int] = set()
    for k in range(o):
        if solver.feasible(pts[k], removed | {k}, tol):
            removed.add(k)
    if not removed:
        return vset
    keep = [i for i in range(o) if i not in removed]
    return VertexSet(pts[keep])


def contains_point(vset: VertexSet, x: np.ndarray,
                   tol: float = DEFAULT_LP_TOL) -> bool:
    """True iff x lies in conv(V) within tol."""
    x = np.asarray(x, dtype=float)
    if x.shape != (vset.dim,):
        raise ContractViolationError(
            f"point has shape {x.shape}, expected ({vset.dim},)")
    return CombinationSolver(vset.points).feasible(x, (), tol)
