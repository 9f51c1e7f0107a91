"""Exception hierarchy for the threshold_cascade package."""


class ThresholdCascadeError(Exception):
    """Base class for all package errors."""


class ParameterError(ThresholdCascadeError, ValueError):
    """A numeric or structural parameter is outside its allowed range."""


class GraphError(ThresholdCascadeError, ValueError):
    """Invalid graph construction or ingestion."""


class EdgeListParseError(GraphError):
    """An edge-list line could not be parsed."""

    def __init__(self, line_number: int, line: str, reason: str = "expected two integers"):
        self.line_number = line_number
        self.line = line
        super().__init__(f"line {line_number}: {reason}: {line!r}")


class ConnectivityError(GraphError):
    """The graph is not connected."""


class UnsupportedRegimeError(ThresholdCascadeError, ValueError):
    """The requested analytic result is outside its range of validity."""


class NumericError(ThresholdCascadeError, ArithmeticError):
    """An iterative numerical procedure failed to converge."""
