"""Orthant machinery: origin insertion, zero-coordinate expansion, orthant
indexing, per-orthant partitioning, and set merging.

Orthants are keyed by the integer q = sum(b_i * 2^i) over the binary vector b
whose bit i is 1 iff coordinate i is nonnegative (0-based bits).  Storage is
sparse: only orthants that actually receive points appear in a partition.
"""

from __future__ import annotations

from typing import Dict, Sequence

import numpy as np

from .errors import ContractViolationError, ExpansionCapError
from .feasibility import DEFAULT_LP_TOL, CombinationSolver
from .skeleton import DEFAULT_SIGN_EPS, sign_of
from .vpolytope import VertexSet

DEFAULT_EXPANSION_CAP = 2 ** 20

OrthantKey = int
OrthantPartition = Dict[OrthantKey, VertexSet]


def origin_search(vset: VertexSet, lp_tol: float = DEFAULT_LP_TOL) -> VertexSet:
    """Append the origin to the vertex set when it lies in conv(V).

    Needed before partitioning: the origin is the unique extreme point shared
    by every orthant, and omitting it leaves gaps in the per-orthant pieces.
    """
    solver = CombinationSolver(vset.points)
    if solver.feasible(np.zeros(vset.dim), (), lp_tol):
        return VertexSet(np.vstack([vset.points, np.zeros((1, vset.dim))]))
    return vset


def zeros_verification(b: np.ndarray) -> list[np.ndarray]:
    """Resolve every 1/2 entry of b to both 0 and 1.

    Returns the 2^z binary vectors in a deterministic order (each 1/2
    position resolved to 0 before 1, lowest position varying fastest last).
    """
    b = np.asarray(b, dtype=float)
    if not np.isin(b, (0.0, 0.5, 1.0)).all():
        raise ContractViolationError("entries must be 0, 1/2 or 1")
    halves = np.nonzero(b == 0.5)[0]
    if halves.size == 0:
        return [b.copy()]
    resolved = []
    for bits in range(1 << halves.size):
        out = b.copy()
        for pos, idx in enumerate(halves):
            out[idx] = float((bits >> pos) & 1)
        resolved.append(out)
    return resolved


def array_position(b: np.ndarray) -> OrthantKey:
    """Decode the binary orthant vector into its integer key."""
    b = np.asarray(b)
    if not np.isin(b, (0, 1)).all():
        raise ContractViolationError("entries must be binary")
    return int(sum(int(bit) << i for i, bit in enumerate(b)))


def separate_per_orthant(vset: VertexSet,
                         sign_eps: float = DEFAULT_SIGN_EPS,
                         expansion_cap: int = DEFAULT_EXPANSION_CAP
                         ) -> OrthantPartition:
    """Split the points into per-orthant vertex sets.

    Each point with z zero coordinates lands in all 2^z orthants it touches.
    Parts keep points in input order; keys are ascending.  Exceeding
    ``expansion_cap`` total placements raises loudly, naming the point.
    """
    buckets: Dict[OrthantKey, list[np.ndarray]] = {}
    placements = 0
    for idx, point in enumerate(vset.points):
        signs = sign_of(point, sign_eps).entries.astype(float)
        b = 0.5 * (signs + 1.0)
        zeros = int(np.count_nonzero(b == 0.5))
        placements += 1 << zeros
        if placements > expansion_cap:
            raise ExpansionCapError(
                f"point index {idx} with {zeros} zero coordinates pushes total "
                f"orthant placements past the cap of {expansion_cap}")
        for resolved in zeros_verification(b):
            buckets.setdefault(array_position(resolved), []).append(point)
    return {key: VertexSet(np.stack(buckets[key]))
            for key in sorted(buckets)}


def merge_sets(parts: Sequence[VertexSet], d: int) -> list[VertexSet]:
    """Concatenate consecutive groups of d vertex sets into one set each.

    Pure concatenation; extreme-point reduction happens downstream.  d = 1
    returns the parts unchanged, d >= len(parts) collapses them into one.
    """
    if d < 1:
        raise ContractViolationError(f"group size d must be >= 1, got {d}")
    merged = []
    for start in range(0, len(parts), d):
        group = parts[start:start + d]
        if len(group) == 1:
            merged.append(group[0])
        else:
            merged.append(VertexSet(np.vstack([p.points for p in group])))
    return merged
