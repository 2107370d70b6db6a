"""Spin-squeezing decoherence of independent two-level atoms in photonic-crystal cavities."""

from .channel import DensityMatrix, KrausPair, apply, apply_product, kraus
from .errors import (
    ConsistencyError,
    ConvergenceError,
    ParameterError,
    PathSingularityError,
    SimulationError,
    SingularInputError,
    SingularMeanSpinError,
)
from .experiments import (
    SweepRow,
    TimeSeriesRow,
    ValidationReport,
    locate_transition,
    run_sweep,
    run_timeseries,
    run_validation,
)
from .params import (
    DispersionModel,
    EnsembleParams,
    GridSpacing,
    ReservoirParams,
    TimeGrid,
    parse_config,
    parse_config_text,
    to_config_text,
)
from .reservoir import (
    AmplitudeSeries,
    AmplitudeSource,
    RootSet,
    amplitude,
    diffusion_integral,
    find_roots,
    localized_residue_denominator,
    localized_root_equation,
    propagating_residue_denominator,
    propagating_root_equation,
    steady_population,
)
from .squeezing import (
    Moments,
    SqueezingValue,
    brute_force_moments,
    brute_force_xi,
    evolved_moments,
    initial_moments,
    xi_squared,
)
from .volterra import KernelSpec, kernel_for, solve

__version__ = "0.1.0"

__all__ = [
    "AmplitudeSeries",
    "AmplitudeSource",
    "ConsistencyError",
    "ConvergenceError",
    "DensityMatrix",
    "DispersionModel",
    "EnsembleParams",
    "GridSpacing",
    "KernelSpec",
    "KrausPair",
    "Moments",
    "ParameterError",
    "PathSingularityError",
    "ReservoirParams",
    "RootSet",
    "SimulationError",
    "SingularInputError",
    "SingularMeanSpinError",
    "SqueezingValue",
    "SweepRow",
    "TimeGrid",
    "TimeSeriesRow",
    "ValidationReport",
    "amplitude",
    "apply",
    "apply_product",
    "brute_force_moments",
    "brute_force_xi",
    "diffusion_integral",
    "evolved_moments",
    "find_roots",
    "initial_moments",
    "kernel_for",
    "kraus",
    "locate_transition",
    "localized_residue_denominator",
    "localized_root_equation",
    "parse_config",
    "parse_config_text",
    "propagating_residue_denominator",
    "propagating_root_equation",
    "run_sweep",
    "run_timeseries",
    "run_validation",
    "solve",
    "steady_population",
    "to_config_text",
    "xi_squared",
]
