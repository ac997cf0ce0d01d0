"""Exception types shared across the package.

The CLI maps these onto exit codes: configuration problems are usage
errors, data-format problems are input errors, and numeric failures
cover everything that goes wrong inside the math.
"""


class InvalidConfigurationError(ValueError):
    """A parameter combination that cannot be run (e.g. even smoothing width)."""


class DataFormatError(ValueError):
    """Malformed input data (bad CSV, non-numeric cells, wrong shape)."""


class NumericFailureError(ArithmeticError):
    """Base class for failures inside numeric routines."""


class NotPositiveDefiniteError(NumericFailureError):
    """Cholesky pivot failure; carries the index of the failing pivot."""

    def __init__(self, index: int, pivot: float):
        super().__init__(
            f"matrix is not positive definite: pivot {pivot:.6e} at index {index}"
        )
        self.index = index
        self.pivot = pivot


class EigenDecompositionError(NumericFailureError):
    """Eigensolver failed to converge; carries the off-diagonal residual norm."""

    def __init__(self, residual: float):
        super().__init__(
            f"eigendecomposition did not converge (off-diagonal residual {residual:.6e})"
        )
        self.residual = residual


class DegenerateInputError(NumericFailureError):
    """Input too degenerate for the tuning heuristic (e.g. all-zero data)."""


class UnstableModelError(NumericFailureError):
    """Too many consecutive unstable draws while sampling a VAR model."""
