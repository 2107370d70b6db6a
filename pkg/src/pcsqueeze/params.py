"""Validated parameter types and the flat key-value configuration format.

Everything is dimensionless: the rate scale beta is the unit of frequency for
its model, times are measured in 1/beta, and the detuning delta and band-edge
frequency omega_c are measured in units of beta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ParameterError


class DispersionModel(str, Enum):
    ISOTROPIC = "isotropic"
    ANISOTROPIC = "anisotropic"
    FREE_SPACE = "free_space"


class GridSpacing(str, Enum):
    UNIFORM = "uniform"


@dataclass(frozen=True)
class ReservoirParams:
    """Reservoir description: dispersion model, detuning, rate scale, band edge.

    delta is the atomic transition frequency minus the band-edge frequency.
    omega_c is required (and used) only for the anisotropic model.
    """

    model: DispersionModel
    delta: float = 0.0
    beta: float = 1.0
    omega_c: float | None = None

    def __post_init__(self):
        if not isinstance(self.model, DispersionModel):
            raise ParameterError(f"model: expected DispersionModel, got {self.model!r}")
        if not math.isfinite(self.delta):
            raise ParameterError(f"delta: must be finite, got {self.delta!r}")
        if not (math.isfinite(self.beta) and self.beta > 0):
            raise ParameterError(f"beta: must be positive and finite, got {self.beta!r}")
        if self.model is DispersionModel.ANISOTROPIC:
            if self.omega_c is None:
                raise ParameterError("omega_c: required for the anisotropic model")
            if not (math.isfinite(self.omega_c) and self.omega_c > 0):
                raise ParameterError(f"omega_c: must be positive and finite, got {self.omega_c!r}")
            if abs(self.delta) > self.omega_c:
                raise ParameterError(
                    f"delta: |delta| must not exceed omega_c ({self.omega_c}), got {self.delta!r}"
                )
        elif self.omega_c is not None:
            # unused for other models; normalise so round-trips compare equal
            object.__setattr__(self, "omega_c", None)


@dataclass(frozen=True)
class EnsembleParams:
    """Atom count and one-axis twisting angle of the initial collective state."""

    n_atoms: int = 10
    theta: float = 0.15 * math.pi

    def __post_init__(self):
        if not isinstance(self.n_atoms, int) or self.n_atoms < 2:
            raise ParameterError(f"n_atoms: must be an integer >= 2, got {self.n_atoms!r}")
        if not (math.isfinite(self.theta) and 0.0 < self.theta < math.pi):
            raise ParameterError(f"theta: must lie strictly inside (0, pi), got {self.theta!r}")


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time grid starting at t = 0, in units of 1/beta.

    n_steps counts the sample points including t = 0.
    """

    t_max: float = 10.0
    n_steps: int = 500
    spacing: GridSpacing = GridSpacing.UNIFORM

    def __post_init__(self):
        if not (math.isfinite(self.t_max) and self.t_max > 0):
            raise ParameterError(f"t_max: must be positive and finite, got {self.t_max!r}")
        if not isinstance(self.n_steps, int) or self.n_steps < 2:
            raise ParameterError(f"n_steps: must be an integer >= 2, got {self.n_steps!r}")
        if not isinstance(self.spacing, GridSpacing):
            raise ParameterError(f"spacing: expected GridSpacing, got {self.spacing!r}")

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.n_steps)


_KEYS = ("model", "delta", "beta", "omega_c", "n_atoms", "theta", "t_max", "n_steps")

_DEFAULTS = {
    "delta": 0.0,
    "beta": 1.0,
    "n_atoms": 10,
    "theta": 0.15 * math.pi,
    "t_max": 10.0,
    "n_steps": 500,
}


def read_config_text(text: str) -> dict:
    """Parse `key = value` lines (with # comments) into a raw key -> string dict."""
    raw = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"line {lineno}: expected `key = value`, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _KEYS:
            raise ParameterError(f"unknown config key {key!r} (line {lineno})")
        if key in raw:
            raise ParameterError(f"duplicate config key {key!r} (line {lineno})")
        raw[key] = value
    return raw


def _as_float(key, value):
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ParameterError(f"{key}: expected a number, got {value!r}") from None


def _as_int(key, value):
    if isinstance(value, int):
        return value
    try:
        return int(str(value), 10)
    except ValueError:
        raise ParameterError(f"{key}: expected an integer, got {value!r}") from None


def build_params(raw: dict) -> tuple[ReservoirParams, EnsembleParams, TimeGrid]:
    """Build the validated parameter bundle from raw key -> value entries.

    Defaults are applied for every omitted key except `model` (and `omega_c`,
    which the anisotropic model requires).
    """
    unknown = set(raw) - set(_KEYS)
    if unknown:
        raise ParameterError(f"unknown config key {sorted(unknown)[0]!r}")
    if "model" not in raw or raw["model"] in (None, ""):
        raise ParameterError("missing required key 'model'")
    model_name = str(raw["model"]).strip().lower()
    try:
        model = DispersionModel(model_name)
    except ValueError:
        allowed = ", ".join(m.value for m in DispersionModel)
        raise ParameterError(f"model: must be one of {allowed}, got {raw['model']!r}") from None

    merged = dict(_DEFAULTS)
    merged.update({k: v for k, v in raw.items() if v is not None and k != "model"})

    omega_c = _as_float("omega_c", merged["omega_c"]) if "omega_c" in merged else None
    reservoir = ReservoirParams(
        model=model,
        delta=_as_float("delta", merged["delta"]),
        beta=_as_float("beta", merged["beta"]),
        omega_c=omega_c,
    )
    ensemble = EnsembleParams(
        n_atoms=_as_int("n_atoms", merged["n_atoms"]),
        theta=_as_float("theta", merged["theta"]),
    )
    grid = TimeGrid(
        t_max=_as_float("t_max", merged["t_max"]),
        n_steps=_as_int("n_steps", merged["n_steps"]),
    )
    return reservoir, ensemble, grid


def parse_config_text(text: str) -> tuple[ReservoirParams, EnsembleParams, TimeGrid]:
    return build_params(read_config_text(text))


def parse_config(path) -> tuple[ReservoirParams, EnsembleParams, TimeGrid]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read())


def read_config_file_or_empty(path) -> dict:
    """Raw key -> value dict from a config file; empty dict when path is None."""
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        return read_config_text(fh.read())


def to_config_text(reservoir: ReservoirParams, ensemble: EnsembleParams, grid: TimeGrid) -> str:
    """Serialise a parameter bundle; parse_config_text() round-trips it exactly."""
    lines = [
        f"model = {reservoir.model.value}",
        f"delta = {reservoir.delta!r}",
        f"beta = {reservoir.beta!r}",
    ]
    if reservoir.omega_c is not None:
        lines.append(f"omega_c = {reservoir.omega_c!r}")
    lines += [
        f"n_atoms = {ensemble.n_atoms}",
        f"theta = {ensemble.theta!r}",
        f"t_max = {grid.t_max!r}",
        f"n_steps = {grid.n_steps}",
    ]
    return "\n".join(lines) + "\n"
