"""Reachability drivers.

Three pipelines propagate a V-polytope through a ReLU network:

* ``apnm``  -- single convex over-approximation per layer,
* ``epnm``  -- exact union of per-orthant branches,
* ``papnm`` -- exact pipeline with consecutive branches merged in groups of
  ``d``, trading branch count for over-approximation (d = 1 reproduces
  ``epnm`` branch-for-branch; merging everything reproduces ``apnm``'s
  single-set shape).

Hidden layers get the full treatment (affine map, edge skeleton, hyperplane
crossings, then ReLU); the final layer is affine only.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from concurrent.futures import ThreadPoolExecutor

from .errors import BranchCapError, ContractViolationError, ReachTimeoutError
from .feasibility import DEFAULT_LP_TOL, CombinationSolver
from .network import Network
from .orthant import DEFAULT_EXPANSION_CAP, merge_sets
from .skeleton import DEFAULT_SIGN_EPS
from .vpolytope import (DEFAULT_DEDUP_TOL, VertexSet, affine_map,
                        dedup_vertices, relu_map, remove_internal_points)

DEFAULT_BRANCH_CAP = 10 ** 6


@dataclass(frozen=True)
class LayerStats:
    layer: int
    vertices_in: int
    sets_out: int


@dataclass(frozen=True)
class ReachSet:
    """Union of V-polytopes in output space plus per-layer counters."""

    polytopes: tuple[VertexSet, ...]
    stats: tuple[LayerStats, ...]

    def __post_init__(self):
        object.__setattr__(self, "polytopes", tuple(self.polytopes))
        object.__setattr__(self, "stats", tuple(self.stats))
        dims = {p.dim for p in self.polytopes}
        if len(dims) > 1:
            raise ContractViolationError(
                f"member polytopes disagree on dimension: {sorted(dims)}")


@dataclass
class _Run:
    lp_tol: float = DEFAULT_LP_TOL
    sign_eps: float = DEFAULT_SIGN_EPS
    dedup_tol: float = DEFAULT_DEDUP_TOL
    workers: int = 1
    deadline: float | None = None
    expansion_cap: int = DEFAULT_EXPANSION_CAP
    branch_cap: int = DEFAULT_BRANCH_CAP
    stats: list[LayerStats] = field(default_factory=list)

    def checkpoint(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ReachTimeoutError("reachability run exceeded its deadline",
                                    stats=self.stats)


def _validate_input(v0: VertexSet, net: Network):
    if v0.dim != net.input_dim:
        raise ContractViolationError(
            f"input polytope dimension {v0.dim} does not match network "
            f"input dimension {net.input_dim}")


def _straddling_crossings(piece: VertexSet, k: int,
                          run: _Run) -> list[np.ndarray]:
    """Crossing points of the edges of a polytope with hyperplane x_k = 0.

    Only vertex pairs with strictly opposite signs at coordinate k can form a
    straddling edge, so adjacency (both midpoint queries infeasible with one
    endpoint zeroed) is tested for those pairs alone.
    """
    pts = piece.points
    col = pts[:, k]
    eps = run.sign_eps
    pos = np.nonzero(col > eps)[0]
    neg = np.nonzero(col < -eps)[0]
    solver = CombinationSolver(pts)
    pairs = sorted((min(int(i), int(j)), max(int(i), int(j)))
                   for i in pos for j in neg)

    def adjacent(pair):
        i, j = pair
        midpoint = 0.5 * (pts[i] + pts[j])
        return (not solver.feasible(midpoint, {i}, run.lp_tol)
                and not solver.feasible(midpoint, {j}, run.lp_tol))

    if run.workers > 1 and len(pairs) > 32:
        with ThreadPoolExecutor(max_workers=run.workers) as pool:
            keep = list(pool.map(adjacent, pairs))
        run.checkpoint()
    else:
        keep = []
        for count, pair in enumerate(pairs):
            if count % 256 == 0:
                run.checkpoint()
            keep.append(adjacent(pair))

    crossings = []
    for (i, j), edge in zip(pairs, keep):
        if edge:
            lam = -col[i] / (col[j] - col[i])
            point = pts[i] + lam * (pts[j] - pts[i])
            point[k] = 0.0
            crossings.append(point)
    return crossings


def _orthant_pieces(z: VertexSet, run: _Run) -> list[tuple[int, VertexSet]]:
    """Split a polytope into its per-orthant pieces with complete vertex sets.

    Coordinate hyperplanes are applied one at a time; after each cut the
    affected pieces' straddling edges are recomputed, so crossings that lie
    on intersections of several hyperplanes (inside higher-dimensional faces,
    where no edge of the original polytope passes) are still generated.
    Returns (orthant key, piece) pairs in ascending key order.
    """
    eps = run.sign_eps
    pieces: list[tuple[VertexSet, dict[int, int]]] = [(z, {})]
    for k in range(z.dim):
        run.checkpoint()
        split: list[tuple[VertexSet, dict[int, int]]] = []
        for piece, bits in pieces:
            col = piece.points[:, k]
            has_pos = bool((col > eps).any())
            has_neg = bool((col < -eps).any())
            if not (has_pos and has_neg):
                bit = 1 if has_pos or not has_neg else 0
                split.append((piece, {**bits, k: bit}))
                continue
            crossings = _straddling_crossings(piece, k, run)
            # A pos-to-neg path can run through a zero vertex, in which case
            # no edge strictly straddles the hyperplane and nothing is added.
            aug = piece if not crossings else dedup_vertices(
                VertexSet(np.vstack([piece.points, np.stack(crossings)])),
                run.dedup_tol)
            col = aug.points[:, k]
            split.append((VertexSet(aug.points[col <= eps]), {**bits, k: 0}))
            split.append((VertexSet(aug.points[col >= -eps]), {**bits, k: 1}))
        pieces = split
    keyed = [(sum(bit << k for k, bit in bits.items()), piece)
             for piece, bits in pieces]
    keyed.sort(key=lambda entry: entry[0])
    return keyed


def apnm(v0: VertexSet, net: Network, *,
         lp_tol: float = DEFAULT_LP_TOL,
         sign_eps: float = DEFAULT_SIGN_EPS,
         dedup_tol: float = DEFAULT_DEDUP_TOL,
         workers: int = 1,
         deadline: float | None = None) -> ReachSet:
    """Over-approximate the reachable set with one convex hull per layer."""
    _validate_input(v0, net)
    run = _Run(lp_tol, sign_eps, dedup_tol, workers, deadline)
    z = dedup_vertices(v0, dedup_tol)
    last = net.num_layers
    for l, layer in enumerate(net.layers, start=1):
        run.checkpoint()
        vertices_in = len(z)
        z = affine_map(z, layer)
        if l < last:
            z = dedup_vertices(z, dedup_tol)
            # A rank-reducing affine map can leave non-extreme images, which
            # the edge skeleton cannot tolerate.
            z = remove_internal_points(z, lp_tol)
            pieces = _orthant_pieces(z, run)
            z = VertexSet(np.vstack([p.points for _, p in pieces]))
            z = relu_map(z)
            z = dedup_vertices(z, dedup_tol)
            z = remove_internal_points(z, lp_tol)
        run.stats.append(LayerStats(l, vertices_in, 1))
    return ReachSet((z,), run.stats)


def _drop_duplicate_singletons(branches: list[VertexSet],
                               tol: float) -> list[VertexSet]:
    # ReLU routinely collapses all-negative branches onto the origin; keep a
    # single copy of any repeated one-point branch.
    kept: list[VertexSet] = []
    for branch in branches:
        if len(branch) == 1:
            duplicate = any(
                len(other) == 1
                and np.linalg.norm(other.points[0] - branch.points[0]) <= tol
                for other in kept)
            if duplicate:
                continue
        kept.append(branch)
    return kept


def _exact_pipeline(v0: VertexSet, net: Network, d: int | None,
                    run: _Run) -> ReachSet:
    _validate_input(v0, net)
    branches = [dedup_vertices(v0, run.dedup_tol)]
    last = net.num_layers
    for l, layer in enumerate(net.layers, start=1):
        run.checkpoint()
        if l > 1:
            processed = []
            for branch in branches:
                run.checkpoint()
                branch = relu_map(branch)
                branch = dedup_vertices(branch, run.dedup_tol)
                branch = remove_internal_points(branch, run.lp_tol)
                processed.append(branch)
            branches = _drop_duplicate_singletons(processed, run.dedup_tol)
        vertices_in = sum(len(b) for b in branches)
        fanned: list[VertexSet] = []
        for branch in branches:
            run.checkpoint()
            z = affine_map(branch, layer)
            if l < last:
                z = dedup_vertices(z, run.dedup_tol)
                # Same extremality repair as in apnm: rank-reducing maps can
                # leave non-extreme images ahead of edge identification.
                z = remove_internal_points(z, run.lp_tol)
                parts = [piece for _, piece in _orthant_pieces(z, run)]
                if d is not None:
                    parts = merge_sets(parts, d)
                fanned.extend(parts)
            else:
                fanned.append(z)
            if len(fanned) > run.branch_cap:
                raise BranchCapError(
                    f"branch count exceeded cap of {run.branch_cap} at layer {l}")
        branches = fanned
        run.stats.append(LayerStats(l, vertices_in, len(branches)))
    final = []
    for branch in branches:
        run.checkpoint()
        branch = dedup_vertices(branch, run.dedup_tol)
        final.append(remove_internal_points(branch, run.lp_tol))
    return ReachSet(tuple(final), run.stats)


def epnm(v0: VertexSet, net: Network, *,
         lp_tol: float = DEFAULT_LP_TOL,
         sign_eps: float = DEFAULT_SIGN_EPS,
         dedup_tol: float = DEFAULT_DEDUP_TOL,
         workers: int = 1,
         deadline: float | None = None,
         expansion_cap: int = DEFAULT_EXPANSION_CAP,
         branch_cap: int = DEFAULT_BRANCH_CAP) -> ReachSet:
    """Exact reachable set as a union of per-orthant branch polytopes."""
    run = _Run(lp_tol, sign_eps, dedup_tol, workers, deadline,
               expansion_cap, branch_cap)
    return _exact_pipeline(v0, net, None, run)


def papnm(v0: VertexSet, net: Network, d: int, *,
          lp_tol: float = DEFAULT_LP_TOL,
          sign_eps: float = DEFAULT_SIGN_EPS,
          dedup_tol: float = DEFAULT_DEDUP_TOL,
          workers: int = 1,
          deadline: float | None = None,
          expansion_cap: int = DEFAULT_EXPANSION_CAP,
          branch_cap: int = DEFAULT_BRANCH_CAP) -> ReachSet:
    """Exact pipeline with per-layer merging of branch groups of size d."""
    if d < 1:
        raise ContractViolationError(f"merge group size must be >= 1, got {d}")
    run = _Run(lp_tol, sign_eps, dedup_tol, workers, deadline,
               expansion_cap, branch_cap)
    return _exact_pipeline(v0, net, d, run)
