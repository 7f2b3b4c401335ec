"""Exception types shared across the package."""


class ContractViolationError(ValueError):
    """An operation was called with arguments that break its contract."""


class SolverFailureError(RuntimeError):
    """The LP feasibility solver could not reach a conclusive answer.

    Raised instead of silently returning infeasible, so callers can
    distinguish "no" from "don't know".
    """


class ExpansionCapError(RuntimeError):
    """A point with many zero coordinates would spawn too many orthant copies."""


class BranchCapError(RuntimeError):
    """The number of per-orthant branches exceeded the configured limit."""


class NnetParseError(ValueError):
    """Malformed ``.nnet`` document."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class PropertyParseError(ValueError):
    """Malformed safety-property document."""


class ReachTimeoutError(Exception):
    """Cooperative cancellation fired at a layer or branch boundary."""

    def __init__(self, message: str, stats=None):
        super().__init__(message)
        self.stats = list(stats) if stats is not None else []
