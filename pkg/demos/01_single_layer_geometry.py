"""Walk the two-neuron example end to end: affine image, edge skeleton,
hyperplane crossings, and the four per-quadrant output pieces.

Run:  python3 demos/01_single_layer_geometry.py
"""

import numpy as np

from vpreach import (LayerParams, Network, VertexSet, affine_map, epnm,
                     identify_edges, intersect_edges)

W = np.array([[0.492693, -1.29232], [0.925861, 0.675146]])
theta = np.array([-0.18857972, -0.14839205])

square = VertexSet([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]])
layer = LayerParams(W, theta)

image = affine_map(square, layer)
print("affine image of the unit square:")
for i, v in enumerate(image.points):
    print(f"  v{i + 1} = ({v[0]: .6f}, {v[1]: .6f})")

skeleton = identify_edges(image)
print("\nedges of the image polygon (vertex index pairs):")
print(" ", sorted(skeleton.edges()))

augmented = intersect_edges(image, skeleton)
print("\naxis crossings appended by edge/hyperplane intersection:")
for p in augmented.points[len(image):]:
    print(f"  ({p[0]: .6f}, {p[1]: .6f})")

# The network applies ReLU after the hidden layer; the final layer is affine
# only, so an identity output layer realizes the single-hidden-layer map.
net = Network.from_layers([layer, LayerParams(np.eye(2), np.zeros(2))])
reach = epnm(square, net)
print(f"\nexact reachable set: {len(reach.polytopes)} per-quadrant pieces")
for branch in reach.polytopes:
    rows = ", ".join(f"({p[0]: .4f},{p[1]: .4f})" for p in branch.points)
    print(f"  [{rows}]")
