from typing import Optional


class DominationError(Exception):
    """
    Base class for every error raised by the domination package.
    """


class GraphError(DominationError, ValueError):
    """
    Invalid graph data: out-of-range ids, self-loops, odd vertex sets.
    """
    def __init__(self, message: str, pair: Optional[tuple[int, int]] = None):
        super().__init__(message)
        self.pair = pair


class ParseError(GraphError):
    """
    Malformed text input. `line` is 1-based.
    """
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class PreconditionError(DominationError):
    """
    Input is well-formed but outside the operation's domain
    (not a block graph, disconnected, degree too high, wrong gadget kind).
    """


class BudgetExceeded(DominationError):
    """
    An exact search hit one of its caps. `cap` names the cap that fired.
    """
    def __init__(self, cap: str, limit: float, detail: str = ""):
        message = f"budget exceeded: {cap}={limit}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)
        self.cap = cap
        self.limit = limit


class InvalidSolutionError(DominationError):
    """
    A solution handed to a map or a projection failed verification.
    """
    def __init__(self, diagnostic: str):
        super().__init__(f"invalid solution: {diagnostic}")
        self.diagnostic = diagnostic


class InvariantViolation(DominationError):
    """
    Internal state broke one of the stated solver or map invariants.
    """


class LiftError(DominationError):
    """
    No semipairing of the given set can be realized in the split gadget graph.
    """
