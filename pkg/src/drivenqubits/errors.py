"""Exception hierarchy shared across the package."""


class DrivenQubitsError(Exception):
    """Base class for all package-specific errors."""


class ParameterError(DrivenQubitsError, ValueError):
    """Invalid physical parameter or argument."""


class CapacityError(DrivenQubitsError):
    """Requested problem size exceeds the dense-superoperator cap."""


class NumericalError(DrivenQubitsError):
    """A numerical routine could not meet its contract."""


class StiffnessError(NumericalError):
    """Adaptive step size underflowed during integration."""

    def __init__(self, message, time):
        super().__init__(message)
        self.time = time


class DegenerateSteadyStateError(NumericalError):
    """Liouvillian null space is not one-dimensional within tolerance."""

    def __init__(self, message, uniqueness_gap):
        super().__init__(message)
        self.uniqueness_gap = uniqueness_gap


class BracketError(DrivenQubitsError):
    """A root/optimum bracket does not straddle the sought feature."""


class NonUnimodalError(DrivenQubitsError):
    """Coarse scan found more than one interior maximum."""

    def __init__(self, message, maxima):
        super().__init__(message)
        self.maxima = list(maxima)


class ConfigError(DrivenQubitsError):
    """Malformed or out-of-schema run configuration."""
