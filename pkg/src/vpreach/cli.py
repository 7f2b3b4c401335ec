"""Command-line front end.

Loads a ``.nnet`` network and a property file, runs the selected pipeline
under a wall-clock budget, and emits a JSON report with the verdict and the
per-layer vertex/set counts.  Exit codes: 0 holds, 1 violated, 2 unknown,
3 timeout, 4 error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import (BranchCapError, ContractViolationError, ExpansionCapError,
                     NnetParseError, PropertyParseError, ReachTimeoutError,
                     SolverFailureError)
from .feasibility import DEFAULT_LP_TOL
from .network import denormalize_output, normalize_input, parse_nnet
from .reach import ReachSet, apnm, epnm, papnm
from .skeleton import DEFAULT_SIGN_EPS
from .verify import Verdict, box_to_vertices, check_property, load_property
from .vpolytope import DEFAULT_DEDUP_TOL, VertexSet

EXIT_HOLDS = 0
EXIT_VIOLATED = 1
EXIT_UNKNOWN = 2
EXIT_TIMEOUT = 3
EXIT_ERROR = 4

_STATUS_EXIT = {"holds": EXIT_HOLDS, "violated": EXIT_VIOLATED,
                "unknown": EXIT_UNKNOWN, "timeout": EXIT_TIMEOUT}


@dataclass
class RunConfig:
    network_path: str
    property_path: str
    algorithm: str = "epnm"
    merge_size: int = 2
    workers: int = field(default_factory=lambda: os.cpu_count() or 1)
    timeout: float = 86400.0
    lp_tol: float = DEFAULT_LP_TOL
    sign_eps: float = DEFAULT_SIGN_EPS
    dedup_tol: float = DEFAULT_DEDUP_TOL
    report_path: Optional[str] = None

    def __post_init__(self):
        if self.algorithm not in ("apnm", "epnm", "papnm"):
            raise ContractViolationError(
                f"algorithm must be apnm, epnm or papnm, got {self.algorithm!r}")
        if self.merge_size < 1:
            raise ContractViolationError("merge size must be >= 1")
        if self.workers < 1:
            raise ContractViolationError("workers must be >= 1")
        if self.timeout <= 0:
            raise ContractViolationError("timeout must be positive")
        for name in ("lp_tol", "sign_eps", "dedup_tol"):
            if getattr(self, name) <= 0:
                raise ContractViolationError(f"{name} must be positive")


def _reach(config: RunConfig, v0: VertexSet, net, deadline: float) -> ReachSet:
    kwargs = dict(lp_tol=config.lp_tol, sign_eps=config.sign_eps,
                  dedup_tol=config.dedup_tol, workers=config.workers,
                  deadline=deadline)
    if config.algorithm == "apnm":
        return apnm(v0, net, **kwargs)
    if config.algorithm == "epnm":
        return epnm(v0, net, **kwargs)
    return papnm(v0, net, config.merge_size, **kwargs)


def _report(config: RunConfig, verdict: Verdict) -> dict:
    report = {
        "status": verdict.status,
        "algorithm": config.algorithm,
        "duration_seconds": verdict.duration_seconds,
        "workers": config.workers,
        "layers": [{"layer": s.layer, "vertices_in": s.vertices_in,
                    "sets_out": s.sets_out} for s in verdict.stats],
    }
    if config.algorithm == "papnm":
        report["merge_size"] = config.merge_size
    if verdict.witness is not None:
        report["witness"] = [float(v) for v in verdict.witness]
    return report


def run(config: RunConfig) -> tuple[int, dict]:
    """Execute the full verify pipeline and return (exit code, report)."""
    start = time.monotonic()
    try:
        net = parse_nnet(Path(config.network_path).read_text())
        spec = load_property(config.property_path)
        if spec.input_lower.shape[0] != net.input_dim:
            raise ContractViolationError(
                f"property box has {spec.input_lower.shape[0]} inputs, network "
                f"expects {net.input_dim}")
        lower = normalize_input(net, spec.input_lower)
        upper = normalize_input(net, spec.input_upper)
        v0 = box_to_vertices(lower, upper)
        deadline = start + config.timeout
        try:
            reach = _reach(config, v0, net, deadline)
            reach = ReachSet(
                tuple(VertexSet(denormalize_output(net, p.points))
                      for p in reach.polytopes),
                reach.stats)
            exact = config.algorithm == "epnm" or (
                config.algorithm == "papnm" and config.merge_size == 1)
            verdict = check_property(reach, spec, exact)
        except ReachTimeoutError as exc:
            verdict = Verdict("timeout", None, exc.stats)
    except (ContractViolationError, SolverFailureError, NnetParseError,
            PropertyParseError, ExpansionCapError, BranchCapError,
            OSError) as exc:
        message = f"{type(exc).__module__}.{type(exc).__name__}: {exc}"
        print(f"error: {message}", file=sys.stderr)
        return EXIT_ERROR, {"status": "error", "message": message}

    duration = time.monotonic() - start
    verdict = Verdict(verdict.status, verdict.witness, verdict.stats, duration)
    report = _report(config, verdict)
    if config.report_path:
        Path(config.report_path).write_text(
            json.dumps(report, indent=2) + "\n")
    _print_summary(report)
    return _STATUS_EXIT[verdict.status], report


def _print_summary(report: dict):
    print(f"status: {report['status']}  "
          f"(algorithm={report['algorithm']}, workers={report['workers']}, "
          f"duration={report['duration_seconds']:.3f}s)")
    for entry in report["layers"]:
        print(f"  layer {entry['layer']}: vertices_in={entry['vertices_in']} "
              f"sets_out={entry['sets_out']}")
    if "witness" in report:
        print(f"  witness: {report['witness']}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vpreach",
        description="Verify a safety property of a ReLU network by "
                    "V-polytope reachability.")
    parser.add_argument("--network", required=True, help=".nnet model file")
    parser.add_argument("--property", required=True, help="property text file")
    parser.add_argument("--algorithm", choices=("apnm", "epnm", "papnm"),
                        default="epnm")
    parser.add_argument("--merge-size", type=int, default=2,
                        help="branch group size for papnm")
    parser.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    parser.add_argument("--timeout", type=float, default=86400.0,
                        help="wall-clock budget in seconds")
    parser.add_argument("--report", default=None, help="JSON report path")
    parser.add_argument("--lp-tol", type=float, default=DEFAULT_LP_TOL)
    parser.add_argument("--sign-eps", type=float, default=DEFAULT_SIGN_EPS)
    parser.add_argument("--dedup-tol", type=float, default=DEFAULT_DEDUP_TOL)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            network_path=args.network,
            property_path=args.property,
            algorithm=args.algorithm,
            merge_size=args.merge_size,
            workers=args.workers,
            timeout=args.timeout,
            lp_tol=args.lp_tol,
            sign_eps=args.sign_eps,
            dedup_tol=args.dedup_tol,
            report_path=args.report,
        )
    except ContractViolationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    code, _ = run(config)
    return code


if __name__ == "__main__":
    sys.exit(main())
