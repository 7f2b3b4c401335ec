"""Compare the three reachability pipelines on one random network.

The exact pipeline keeps one polytope per activation region; the
over-approximate one merges everything into a single hull each layer; the
partial variant interpolates via the merge group size d.

Run:  python3 demos/02_pipeline_tradeoffs.py
"""

import numpy as np

from vpreach import (LayerParams, Network, VertexSet, apnm, contains_point,
                     epnm, forward, papnm)

rng = np.random.default_rng(4)
widths = [2, 4, 4, 2]
net = Network.from_layers(
    [LayerParams(rng.uniform(-2, 2, (m, n)), rng.uniform(-1, 1, m))
     for n, m in zip(widths, widths[1:])])

box = VertexSet([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]])

runs = {
    "epnm": epnm(box, net),
    "papnm(d=2)": papnm(box, net, 2),
    "papnm(d=4)": papnm(box, net, 4),
    "apnm": apnm(box, net),
}

print(f"{'pipeline':<12} {'sets':>5}  per-layer (vertices_in, sets_out)")
for name, reach in runs.items():
    layers = " ".join(f"L{s.layer}:({s.vertices_in},{s.sets_out})"
                      for s in reach.stats)
    print(f"{name:<12} {len(reach.polytopes):>5}  {layers}")

# Sampled soundness: every forward image must land in every pipeline's union.
samples = rng.uniform(-1, 1, (500, 2))
for name, reach in runs.items():
    hits = sum(
        any(contains_point(p, forward(net, x), 1e-6) for p in reach.polytopes)
        for x in samples)
    print(f"{name:<12} contains {hits}/{len(samples)} sampled images")

# Nesting: the exact union's vertices lie inside the merged over-approximations.
exact = runs["epnm"]
for name in ("papnm(d=2)", "papnm(d=4)", "apnm"):
    outer = runs[name].polytopes
    nested = all(
        any(contains_point(m, v, 1e-6) for m in outer)
        for branch in exact.polytopes for v in branch.points)
    print(f"exact union nested in {name}: {nested}")
