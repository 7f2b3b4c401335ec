"""Convex-combination oracle tests: hand cases, brute-force agreement, and
error contracts."""

import numpy as np
import pytest

from vpreach import (CombinationSolver, ContractViolationError,
                     FeasibilityQuery, convex_combination_exists)
from conftest import UNIT_SQUARE
from oracles import point_in_hull_2d

TRIANGLE = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])


def test_interior_point_of_simplex_is_feasible():
    assert convex_combination_exists(
        FeasibilityQuery(TRIANGLE, np.array([0.25, 0.25])))


def test_point_outside_hull_is_infeasible():
    assert not convex_combination_exists(
        FeasibilityQuery(TRIANGLE, np.array([2.0, 2.0])))


def test_edge_midpoint_needs_both_endpoints():
    # Midpoint of the square's right edge: infeasible once either endpoint is
    # forced to zero weight, which is what makes the pair an edge.  Verified
    # against brute-force 2-D hull membership of the three remaining corners.
    square = np.array([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]])
    midpoint = np.array([1.0, 0.0])
    for zeroed in ({0}, {3}):
        assert not convex_combination_exists(
            FeasibilityQuery(square, midpoint, frozenset(zeroed)))
        remaining = np.delete(square, list(zeroed), axis=0)
        assert not point_in_hull_2d(remaining, midpoint)


def test_generators_are_members():
    rng = np.random.default_rng(7)
    for _ in range(30):
        pts = rng.normal(size=(int(rng.integers(1, 7)), int(rng.integers(1, 5))))
        k = int(rng.integers(len(pts)))
        assert convex_combination_exists(FeasibilityQuery(pts, pts[k]))


def test_zeroed_set_monotonicity():
    # Feasible with a zeroed set stays feasible for every subset of it.
    rng = np.random.default_rng(11)
    for _ in range(50):
        pts = rng.uniform(-1, 1, (6, 2))
        target = rng.uniform(-1, 1, 2)
        zeroed = frozenset(int(i) for i in rng.choice(6, 2, replace=False))
        if convex_combination_exists(FeasibilityQuery(pts, target, zeroed)):
            for drop in zeroed:
                smaller = zeroed - {drop}
                assert convex_combination_exists(
                    FeasibilityQuery(pts, target, smaller))
                assert convex_combination_exists(
                    FeasibilityQuery(pts, target))


def test_agreement_with_brute_force_2d():
    rng = np.random.default_rng(23)
    for _ in range(200):
        o = int(rng.integers(3, 9))
        pts = rng.uniform(-1, 1, (o, 2))
        target = rng.uniform(-1.2, 1.2, 2)
        zeroed = frozenset() if rng.random() < 0.5 else \
            frozenset({int(rng.integers(o))})
        got = convex_combination_exists(FeasibilityQuery(pts, target, zeroed),
                                        tol=1e-9)
        remaining = np.delete(pts, list(zeroed), axis=0)
        # Only assert away from the hull boundary, where both methods are
        # tolerance-stable.
        tight = point_in_hull_2d(remaining, target, tol=1e-9)
        loose = point_in_hull_2d(remaining, target, tol=1e-5)
        if tight == loose:
            assert got == tight


def test_solver_reuse_matches_single_shot():
    rng = np.random.default_rng(3)
    pts = rng.uniform(-1, 1, (8, 3))
    solver = CombinationSolver(pts)
    for _ in range(40):
        target = rng.uniform(-1, 1, 3)
        zeroed = frozenset(int(i) for i in rng.choice(8, 2, replace=False))
        assert solver.feasible(target, zeroed) == convex_combination_exists(
            FeasibilityQuery(pts, target, zeroed))


def test_degenerate_generators_use_reduced_system():
    # 30 coplanar points in R^6: queries must still resolve cleanly.
    rng = np.random.default_rng(5)
    basis = rng.normal(size=(2, 6))
    coeffs = rng.uniform(-1, 1, (30, 2))
    pts = coeffs @ basis + rng.normal(size=6)
    solver = CombinationSolver(pts)
    assert solver.feasible(pts.mean(axis=0))
    assert not solver.feasible(pts.mean(axis=0) + 1.0)


def test_dimension_mismatch_rejected():
    with pytest.raises(ContractViolationError):
        convex_combination_exists(FeasibilityQuery(TRIANGLE, np.zeros(3)))


def test_zeroed_indices_out_of_range_rejected():
    with pytest.raises(ContractViolationError):
        convex_combination_exists(
            FeasibilityQuery(TRIANGLE, np.zeros(2), frozenset({5})))


def test_nonpositive_tolerance_rejected():
    with pytest.raises(ContractViolationError):
        convex_combination_exists(
            FeasibilityQuery(TRIANGLE, np.zeros(2)), tol=0.0)


def test_non_2d_matrix_rejected():
    with pytest.raises(ContractViolationError):
        convex_combination_exists(
            FeasibilityQuery(np.zeros(3), np.zeros(1)))
