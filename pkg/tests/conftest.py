"""Shared fixtures: the two-neuron worked example and random-net builders."""

from __future__ import annotations

import numpy as np
import pytest

from vpreach import LayerParams, Network, VertexSet

# Hidden layer of the two-neuron worked example; realized as a network by
# appending an identity output layer, since the final layer is affine only.
TOY_W = np.array([[0.492693, -1.29232], [0.925861, 0.675146]])
TOY_THETA = np.array([-0.18857972, -0.14839205])

UNIT_SQUARE = np.array([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]])


@pytest.fixture
def toy_layer() -> LayerParams:
    return LayerParams(TOY_W, TOY_THETA)


@pytest.fixture
def toy_net(toy_layer) -> Network:
    return Network.from_layers(
        [toy_layer, LayerParams(np.eye(2), np.zeros(2))])


@pytest.fixture
def square() -> VertexSet:
    return VertexSet(UNIT_SQUARE)


def random_layers(rng: np.random.Generator, widths, low=-2.0, high=2.0):
    """Uniform random (weights, biases) pairs for consecutive widths."""
    layers = []
    for n, m in zip(widths, widths[1:]):
        layers.append(LayerParams(rng.uniform(low, high, (m, n)),
                                  rng.uniform(low, high, m)))
    return layers


def random_net(rng: np.random.Generator, widths, low=-2.0, high=2.0) -> Network:
    return Network.from_layers(random_layers(rng, widths, low, high))


def random_hull_2d(rng: np.random.Generator, count: int) -> VertexSet:
    """A 2-D extreme-point set: hull vertices of random points."""
    from oracles import monotone_chain_hull
    while True:
        pts = rng.uniform(-1.0, 1.0, (count, 2))
        hull = monotone_chain_hull(pts)
        if len(hull) >= 3:
            return VertexSet(hull)


def sample_hull(rng: np.random.Generator, vset: VertexSet,
                count: int) -> np.ndarray:
    """Random convex combinations of a vertex set's points."""
    weights = rng.dirichlet(np.ones(len(vset)), size=count)
    return weights @ vset.points


def box_cycle(lower, upper) -> np.ndarray:
    """The four corners of a 2-D box as an ordered polygon cycle."""
    (l0, l1), (u0, u1) = lower, upper
    return np.array([[l0, l1], [u0, l1], [u0, u1], [l0, u1]])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Replay the per-criterion acceptance lines after capture ends."""
    import sys
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None) if module else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


def assert_union_matches_clipping(net: Network, lower, upper,
                                  tol: float = 1e-6, samples: int = 0,
                                  rng: np.random.Generator | None = None):
    """Check the exact pipeline's output union against the polygon-clipping
    oracle for a 2-D input box, optionally with sampled forward images."""
    from vpreach import CombinationSolver, epnm, forward
    from oracles import exact_reach_pieces, same_point_sets, union_vertices

    cycle = box_cycle(lower, upper)
    reach = epnm(VertexSet(cycle), net)
    pieces = exact_reach_pieces(
        cycle, [(l.weights, l.biases) for l in net.layers])
    got = np.vstack([p.points for p in reach.polytopes])
    want = union_vertices(pieces, tol=1e-9)
    assert same_point_sets(got, want, tol), \
        f"vertex union mismatch: got {got}, oracle {want}"
    if samples:
        solvers = [CombinationSolver(p.points) for p in reach.polytopes]
        xs = rng.uniform(lower, upper, (samples, 2))
        for x in xs:
            y = forward(net, x)
            assert any(s.feasible(y, (), tol) for s in solvers), \
                f"forward image {y} of {x} escapes the exact union"
    return reach
