"""Randomized property suites shared by the module tests and the acceptance
gate.

Each checker runs ``count`` independently seeded instances; module tests call
them with modest counts, the acceptance gate with 1000.
"""

from __future__ import annotations

import numpy as np

from vpreach import (VertexSet, contains_point, identify_edges,
                     intersect_edges, max_linear, relu_map,
                     remove_internal_points, separate_per_orthant, sign_of)
from conftest import random_hull_2d, sample_hull


def check_relu_idempotence(count: int, seed: int):
    """relu_map(relu_map(V)) == relu_map(V) on random point sets."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        dim = int(rng.integers(1, 6))
        pts = rng.normal(0.0, 2.0, (int(rng.integers(1, 8)), dim))
        once = relu_map(VertexSet(pts))
        assert relu_map(once) == once
        assert (once.points >= 0).all()


def check_rp_idempotence_and_hull(count: int, seed: int):
    """remove_internal_points is idempotent, shrinking, and hull-preserving."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        dim = int(rng.integers(2, 5))
        pts = rng.uniform(-1.0, 1.0, (int(rng.integers(3, 11)), dim))
        vset = VertexSet(pts)
        reduced = remove_internal_points(vset)
        assert remove_internal_points(reduced) == reduced
        rows = {tuple(p) for p in reduced.points}
        assert rows <= {tuple(p) for p in vset.points}
        for p in vset.points:
            assert contains_point(reduced, p, 1e-6)


def check_partition_coverage(count: int, seed: int):
    """Every point lands in exactly 2^z orthant parts (z = zero coords)."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        dim = int(rng.integers(1, 4))
        pts = rng.uniform(-1.0, 1.0, (int(rng.integers(1, 7)), dim))
        # Force some exact zeros so the expansion path is exercised.
        mask = rng.random(pts.shape) < 0.25
        pts[mask] = 0.0
        parts = separate_per_orthant(VertexSet(pts))
        for p in pts:
            zeros = int(np.count_nonzero(p == 0.0))
            hits = sum(any(np.array_equal(p, q) for q in part.points)
                       for part in parts.values())
            assert hits == 1 << zeros


def check_sign_compatibility(count: int, seed: int):
    """Each orthant part's points are sign-compatible with its key bits."""
    rng = np.random.default_rng(seed)
    eps = 1e-9
    for _ in range(count):
        dim = int(rng.integers(1, 4))
        pts = rng.uniform(-1.0, 1.0, (int(rng.integers(1, 7)), dim))
        mask = rng.random(pts.shape) < 0.25
        pts[mask] = 0.0
        for key, part in separate_per_orthant(VertexSet(pts)).items():
            for p in part.points:
                for i in range(dim):
                    if (key >> i) & 1:
                        assert p[i] >= -eps
                    else:
                        assert p[i] <= eps
        signs = sign_of(pts[0]).entries
        assert ((signs == 1) == (pts[0] > eps)).all()
        assert ((signs == -1) == (pts[0] < -eps)).all()


def check_vertex_attainment(count: int, seed: int, combos: int = 50):
    """max_linear dominates every sampled convex combination."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        dim = int(rng.integers(1, 5))
        vset = VertexSet(rng.normal(0.0, 1.0, (int(rng.integers(2, 8)), dim)))
        c = rng.normal(0.0, 1.0, dim)
        top = max_linear(vset, c)
        sampled = sample_hull(rng, vset, combos) @ c
        assert sampled.max() <= top + 1e-9
        assert top in set((vset.points @ c).tolist())


def check_lambda_in_range(count: int, seed: int):
    """Edge/hyperplane crossings stay on their segment, carry an exact zero
    coordinate, and never leave the hull."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        vset = random_hull_2d(rng, int(rng.integers(4, 9)))
        skeleton = identify_edges(vset)
        # Crossing parameters outside [0, 1] would raise inside this call.
        augmented = intersect_edges(vset, skeleton)
        for p in augmented.points[len(vset):]:
            assert (p == 0.0).any()
            assert contains_point(vset, p, 1e-6)


ALL_CHECKS = (
    check_relu_idempotence,
    check_rp_idempotence_and_hull,
    check_partition_coverage,
    check_sign_compatibility,
    check_vertex_attainment,
    check_lambda_in_range,
)
