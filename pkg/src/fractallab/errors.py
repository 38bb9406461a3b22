"""Shared exception types."""


class DomainError(ValueError):
    """Input lies outside an operation's mathematical domain."""


class ResourceLimitError(ValueError):
    """Request exceeds a hard size cap (iteration depth, grid size, ...)."""


class NonConvergenceError(RuntimeError):
    """An iterative solver exhausted its budget.

    ``best`` carries the last iterates so callers can inspect how close the
    solver got.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
