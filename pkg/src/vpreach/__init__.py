"""Vertex-polytope reachability analysis for feed-forward ReLU networks.

Propagates V-polytopes layer by layer to compute an exact reachable set, a
convex over-approximation, or a tunable intermediate, and checks linear
safety properties against the result.
"""

from .errors import (BranchCapError, ContractViolationError, ExpansionCapError,
                     NnetParseError, PropertyParseError, ReachTimeoutError,
                     SolverFailureError)
from .feasibility import (CombinationSolver, FeasibilityQuery,
                          convex_combination_exists)
from .network import (Network, denormalize_output, forward, normalize_input,
                      parse_nnet, serialize_nnet)
from .orthant import (OrthantKey, OrthantPartition, array_position,
                      merge_sets, origin_search, separate_per_orthant,
                      zeros_verification)
from .reach import LayerStats, ReachSet, apnm, epnm, papnm
from .skeleton import (EdgeSkeleton, SignVector, identify_edges,
                       intersect_edges, sign_of)
from .verify import (OutputConstraint, PropertySpec, Verdict, acas_property1,
                     box_to_vertices, check_property, load_property,
                     max_linear, parse_property)
from .vpolytope import (LayerParams, VertexSet, affine_map, contains_point,
                        dedup_vertices, relu_map, remove_internal_points)

__all__ = [
    "BranchCapError", "CombinationSolver", "ContractViolationError",
    "EdgeSkeleton", "ExpansionCapError", "FeasibilityQuery", "LayerParams",
    "LayerStats", "Network", "NnetParseError", "OrthantKey",
    "OrthantPartition", "OutputConstraint", "PropertyParseError",
    "PropertySpec", "ReachSet", "ReachTimeoutError", "SignVector",
    "SolverFailureError", "Verdict", "VertexSet", "acas_property1",
    "affine_map", "apnm", "array_position", "box_to_vertices",
    "check_property", "contains_point", "convex_combination_exists",
    "dedup_vertices", "denormalize_output", "epnm", "forward",
    "identify_edges", "intersect_edges", "load_property", "max_linear",
    "merge_sets", "normalize_input", "origin_search", "papnm", "parse_nnet",
    "parse_property", "relu_map", "remove_internal_points",
    "separate_per_orthant", "serialize_nnet", "sign_of", "zeros_verification",
]

__version__ = "0.1.0"
