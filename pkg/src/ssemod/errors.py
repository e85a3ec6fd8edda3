"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """Raised when an edge-list document cannot be parsed."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class NotRegularError(ValueError):
    """Raised when an operation requires a regular graph."""


class PreconditionError(ValueError):
    """Raised when a solver's documented precondition does not hold."""


class BudgetExceededError(RuntimeError):
    """Raised when exhaustive or enumeration work would exceed its budget."""


class ExtractionError(RuntimeError):
    """Raised when the high-rank extractor finds no qualifying set.

    The partial extraction trace, if any, is available as ``trace``.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace
