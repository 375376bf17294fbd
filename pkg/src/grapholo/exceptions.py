"""Exception types shared across the package."""


class GrapholoError(Exception):
    """Base class for all package errors."""


class MissingDataError(GrapholoError):
    """A vertex needed by an operation has no value, or a required choice entry is absent."""


class InputFormatError(GrapholoError):
    """Malformed input document (bad JSON structure, bad graph)."""


class SizeCapError(GrapholoError):
    """Requested computation exceeds a configured size cap."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class NumericalFailureError(GrapholoError):
    """An iterative numerical kernel failed to converge."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals


class InfeasibleStepError(GrapholoError):
    """A constrained completion step has no solution."""

    def __init__(self, message, *, alpha=None, a1=None, vertex=None):
        super().__init__(message)
        self.alpha = alpha
        self.a1 = a1
        self.vertex = vertex
