"""Exception types shared across the package."""


class SimulationError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(SimulationError):
    """Invalid or out-of-domain input (config keys, physical parameters)."""


class SingularInputError(ParameterError):
    """Evaluation requested exactly at a branch point or other singular input."""


class ConvergenceError(SimulationError):
    """A numerical scheme did not reach its target accuracy within budget."""


class PathSingularityError(ConvergenceError):
    """A pole of the integrand sits on the quadrature path."""


class ConsistencyError(SimulationError):
    """An internal self-check failed, e.g. the amplitude decomposition at t = 0."""


class SingularMeanSpinError(SimulationError):
    """Squeezing parameter undefined because the mean spin vanishes."""
