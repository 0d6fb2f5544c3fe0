"""Exception hierarchy shared by all nsdw modules."""


class NSDWError(Exception):
    """Base class for every error raised by the package."""


class GraphParseError(NSDWError, ValueError):
    """Malformed graph6, edge-list or weighting text."""


class NotNiceError(NSDWError, ValueError):
    """The input graph has a connected component isomorphic to K2."""


class PreconditionError(NSDWError, ValueError):
    """A documented precondition of an operation does not hold."""


class BudgetError(PreconditionError):
    """The supplied weight set is too small (or of the wrong size)."""


class InvariantViolation(NSDWError, RuntimeError):
    """A case the underlying proof guarantees was not found.

    This always signals a bug. ``trace`` carries whatever reduction steps
    were recorded before the failure, ``details`` any extra diagnostics.
    """

    def __init__(self, message, trace=None, details=None):
        super().__init__(message)
        self.trace = trace
        self.details = details or {}


class SearchBudgetExceeded(NSDWError):
    """The exact solver ran out of nodes or time before deciding."""

    def __init__(self, message, nodes=0, elapsed=0.0):
        super().__init__(message)
        self.nodes = nodes
        self.elapsed = elapsed
