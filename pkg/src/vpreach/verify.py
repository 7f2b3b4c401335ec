"""Safety-property representation and the reachable-set check.

A property pairs a raw-unit input box with conjunctive linear output
constraints.  Because a linear function over a V-polytope attains its
extremum at a vertex, each constraint is checked by scanning reach-set
vertices; exact pipelines may report a violation with the offending
output-space vertex, over-approximate ones can only report unknown.
"""

from __future__ import annotations

import importlib.resources
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Literal, Optional, Sequence

import numpy as np

from .errors import ContractViolationError, PropertyParseError
from .reach import LayerStats, ReachSet
from .vpolytope import VertexSet, dedup_vertices

BOX_DIM_GUARD = 25

Relation = Literal["<=", ">="]


@dataclass(frozen=True)
class OutputConstraint:
    coefficients: np.ndarray
    relation: Relation
    bound: float

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=float)
        c.flags.writeable = False
        object.__setattr__(self, "coefficients", c)
        if self.relation not in ("<=", ">="):
            raise ContractViolationError(f"relation must be <= or >=, got "
                                         f"{self.relation!r}")


@dataclass(frozen=True)
class PropertySpec:
    """Input box (raw units) and conjunctive safe-output constraints."""

    input_lower: np.ndarray
    input_upper: np.ndarray
    output_constraints: tuple[OutputConstraint, ...]

    def __post_init__(self):
        lower = np.array(self.input_lower, dtype=float)
        upper = np.array(self.input_upper, dtype=float)
        lower.flags.writeable = False
        upper.flags.writeable = False
        object.__setattr__(self, "input_lower", lower)
        object.__setattr__(self, "input_upper", upper)
        object.__setattr__(self, "output_constraints",
                           tuple(self.output_constraints))
        if lower.shape != upper.shape or (lower > upper).any():
            raise ContractViolationError("need input_lower <= input_upper "
                                         "componentwise")
        if not self.output_constraints:
            raise ContractViolationError("at least one output constraint required")


@dataclass(frozen=True)
class Verdict:
    status: Literal["holds", "violated", "unknown", "timeout"]
    witness: Optional[np.ndarray]
    stats: tuple[LayerStats, ...]
    duration_seconds: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "stats", tuple(self.stats))
        if (self.witness is not None) != (self.status == "violated"):
            raise ContractViolationError(
                "witness must be present exactly when status is 'violated'")


def box_to_vertices(lower: np.ndarray, upper: np.ndarray) -> VertexSet:
    """Enumerate the 2^n corners of a box, in ascending bit order.

    Bit i of the corner index selects upper (1) or lower (0) for coordinate
    i.  Degenerate coordinates collapse via exact deduplication.  Guarded at
    n = 25 because corner count is exponential.
    """
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    if lower.shape != upper.shape or lower.ndim != 1:
        raise ContractViolationError("lower and upper must be equal-length vectors")
    if (lower > upper).any():
        raise ContractViolationError("need lower <= upper componentwise")
    n = lower.shape[0]
    if n > BOX_DIM_GUARD:
        raise ContractViolationError(
            f"{n}-dimensional box has 2^{n} corners; pass a V-polytope directly "
            f"instead of a box")
    corners = np.empty((1 << n, n))
    for q in range(1 << n):
        bits = np.array([(q >> i) & 1 for i in range(n)], dtype=bool)
        corners[q] = np.where(bits, upper, lower)
    return dedup_vertices(VertexSet(corners), 0.0)


def max_linear(vset: VertexSet, c: np.ndarray) -> float:
    """Maximum of c . x over conv(V); exact by vertex attainment."""
    c = np.asarray(c, dtype=float)
    if c.shape != (vset.dim,):
        raise ContractViolationError(
            f"coefficient vector has shape {c.shape}, expected ({vset.dim},)")
    return float(np.max(vset.points @ c))


def _worst_vertex(vset: VertexSet, constraint: OutputConstraint
                  ) -> tuple[float, np.ndarray]:
    values = vset.points @ constraint.coefficients
    idx = int(np.argmax(values) if constraint.relation == "<=" else
              np.argmin(values))
    return float(values[idx]), vset.points[idx]


def _violates(value: float, constraint: OutputConstraint) -> bool:
    if constraint.relation == "<=":
        return value > constraint.bound
    return value < constraint.bound


def check_property(reach: ReachSet, spec: PropertySpec,
                   exact: bool) -> Verdict:
    """Evaluate every constraint at its worst reach-set vertex.

    All constraints holding on all polytopes gives ``holds``.  A failing
    constraint gives ``violated`` with the offending vertex when the reach
    set came from an exact pipeline, otherwise ``unknown`` (an
    over-approximation cannot certify a violation).
    """
    out_dim = spec.output_constraints[0].coefficients.shape[0]
    for poly in reach.polytopes:
        if poly.dim != out_dim:
            raise ContractViolationError(
                f"reach polytope dimension {poly.dim} does not match "
                f"constraint dimension {out_dim}")
    for poly in reach.polytopes:
        for constraint in spec.output_constraints:
            if constraint.coefficients.shape[0] != out_dim:
                raise ContractViolationError("constraints disagree on dimension")
            value, vertex = _worst_vertex(poly, constraint)
            if _violates(value, constraint):
                if exact:
                    return Verdict("violated", vertex.copy(), reach.stats)
                return Verdict("unknown", None, reach.stats)
    return Verdict("holds", None, reach.stats)


def parse_property(text: str) -> PropertySpec:
    """Parse the plain-text property format.

    ``[input]`` lines read "i: lower upper" for 0-based input index i;
    ``[output]`` lines read "c_0 ... c_{m-1} <= b" (or ">= b").  ``#`` starts
    a comment.
    """
    bounds: dict[int, tuple[float, float]] = {}
    constraints: list[OutputConstraint] = []
    section = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower() in ("[input]", "[output]"):
            section = line.lower()
            continue
        if section == "[input]":
            try:
                index_part, rest = line.split(":", 1)
                index = int(index_part)
                lo, hi = (float(t) for t in rest.split())
            except ValueError:
                raise PropertyParseError(
                    f"line {line_no}: expected 'i: lower upper', got {raw!r}")
            bounds[index] = (lo, hi)
        elif section == "[output]":
            tokens = line.split()
            relation = next((t for t in tokens if t in ("<=", ">=")), None)
            if relation is None or tokens.index(relation) != len(tokens) - 2:
                raise PropertyParseError(
                    f"line {line_no}: expected 'c_0 ... c_m-1 <=|>= b', got {raw!r}")
            split = tokens.index(relation)
            try:
                coeffs = np.array([float(t) for t in tokens[:split]])
                bound = float(tokens[split + 1])
            except ValueError:
                raise PropertyParseError(f"line {line_no}: non-numeric token")
            if coeffs.size == 0:
                raise PropertyParseError(f"line {line_no}: empty coefficient list")
            constraints.append(OutputConstraint(coeffs, relation, bound))
        else:
            raise PropertyParseError(
                f"line {line_no}: content outside [input]/[output] sections")
    if not bounds:
        raise PropertyParseError("no [input] bounds found")
    n = max(bounds) + 1
    if sorted(bounds) != list(range(n)):
        raise PropertyParseError(
            f"input indices must cover 0..{n - 1}, got {sorted(bounds)}")
    lower = np.array([bounds[i][0] for i in range(n)])
    upper = np.array([bounds[i][1] for i in range(n)])
    return PropertySpec(lower, upper, tuple(constraints))


def load_property(path: str | Path) -> PropertySpec:
    return parse_property(Path(path).read_text())


def acas_property1() -> PropertySpec:
    """The bundled ACAS Xu property-1 fixture."""
    text = (importlib.resources.files("vpreach") / "data" /
            "acas_property1.txt").read_text()
    return parse_property(text)
