"""Exception types shared across the package."""


class TmYagError(Exception):
    """Base class for all package errors."""


class MissingField(TmYagError):
    """A required key is absent from a constants file."""


class ParseError(TmYagError):
    """A constants file is not valid JSON."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class InvariantViolation(TmYagError):
    """A loaded value violates a self-consistency constraint."""

    def __init__(self, name, got, expected):
        super().__init__(f"{name}: got {got!r}, expected {expected}")
        self.name = name
        self.got = got
        self.expected = expected


class IndexOutOfRange(TmYagError):
    """Site index outside 1..6."""


class ZeroField(TmYagError):
    """Operation requires a nonzero magnetic field vector."""


class ZeroDirection(TmYagError):
    """Operation requires a nonzero direction vector."""


class NonpositiveSplitting(TmYagError):
    """Crystal-field splitting must be strictly positive."""


class NonpositiveTemperature(TmYagError):
    """Temperature must be strictly positive."""


class NonpositiveInput(TmYagError):
    """All inputs to this estimate must be strictly positive."""


class InvalidGrid(TmYagError):
    """Detuning grid must be uniform and strictly increasing."""


class NoConvergence(TmYagError):
    """Iterative fit did not reach the convergence tolerances."""

    def __init__(self, message, iterations=None, residual=None, best_params=None,
                 residual_history=None):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual
        self.best_params = best_params
        self.residual_history = residual_history


class SingularNormalEquations(TmYagError):
    """Damping exhausted without producing an acceptable step."""


class BoundsViolation(TmYagError):
    """Initial parameters lie outside the declared bounds."""


class DegenerateInit(TmYagError):
    """Two initial line centers are closer than the grid step."""


class InsufficientCoverage(TmYagError):
    """Pooled rate data do not span more than one field or temperature."""


class NonPositiveRateEstimate(TmYagError):
    """Exponential fit returned a non-positive decay rate."""


class ConflictingFlags(TmYagError):
    """Mutually inconsistent command-line flags."""
