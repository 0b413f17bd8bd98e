"""Exception types shared across the package.

The CLI maps these onto exit codes: validation and parameter problems
exit 1, accuracy-loss refusals exit 2, verification failures exit 3 and
I/O failures exit 4.
"""


class FracbdiError(Exception):
    """Base class for all package-specific errors."""


class DomainError(FracbdiError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ParameterError(FracbdiError, ValueError):
    """A model parameterisation is invalid or unsupported for the operation."""


class AccuracyLossError(FracbdiError):
    """The requested value cannot be trusted at the working precision.

    When the refused quantity was still computed (for diagnostics), it is
    attached as ``result`` so callers can inspect the value together with
    its error estimates.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class TableOverflowError(FracbdiError):
    """A coefficient left the double-precision range during table construction."""

    def __init__(self, n, k):
        super().__init__(f"coefficient at (n={n}, k={k}) exceeds the floating range")
        self.n = n
        self.k = k


class ResourceLimitError(FracbdiError):
    """A requested table or simulation size exceeds the configured limit."""


class RunawayError(FracbdiError):
    """A simulated population exceeded the runaway guard (supercritical blow-up)."""


class QuadratureError(FracbdiError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message, value=None, achieved=None):
        super().__init__(message)
        self.value = value
        self.achieved = achieved
