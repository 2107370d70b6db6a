"""Experiment drivers: time series, detuning sweeps, transition location, validation.

All drivers are deterministic; CSV output is byte-stable for a fixed config.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from . import reservoir, squeezing, volterra
from .channel import apply_product_raw, kraus
from .errors import ParameterError, SingularMeanSpinError
from .params import DispersionModel, EnsembleParams, ReservoirParams, TimeGrid

TIMESERIES_SCHEMA = "timeseries v1"
SWEEP_SCHEMA = "sweep v1"
TRANSITION_SCHEMA = "transition v1"


@dataclass(frozen=True)
class TimeSeriesRow:
    t: float
    population: float
    xi2: float | None
    zeta2: float | None


@dataclass(frozen=True)
class SweepRow:
    delta: float
    steady_population: float
    zeta2_inf: float
    bound_state_present: bool


def _squeeze_at(p_surv: float, m0, n_atoms: int):
    try:
        value = squeezing.xi_squared(squeezing.evolved_moments(m0, p_surv), n_atoms)
        return value.xi2, value.zeta2
    except SingularMeanSpinError:
        return None, None


def run_timeseries(r: ReservoirParams, e: EnsembleParams, g: TimeGrid,
                   source: str = "closed") -> list[TimeSeriesRow]:
    """Population and squeezing on the grid; undefined instants carry None markers.

    source selects the amplitude engine: "closed" (pole/cut decomposition) or
    "oracle" (memory-kernel time stepping).
    """
    if source == "closed":
        series = reservoir.amplitude(r, g)
    elif source == "oracle":
        series = volterra.solve(r, g)
    else:
        raise ParameterError(f"source: must be 'closed' or 'oracle', got {source!r}")
    m0 = squeezing.initial_moments(e)
    rows = []
    for t, pop in zip(series.grid.times, series.population):
        xi2, zeta2 = _squeeze_at(float(pop), m0, e.n_atoms)
        rows.append(TimeSeriesRow(t=float(t), population=float(pop), xi2=xi2, zeta2=zeta2))
    return rows


def run_sweep(r_template: ReservoirParams, e: EnsembleParams,
              delta_lo: float, delta_hi: float, n_points: int) -> list[SweepRow]:
    """Steady-state squeezing versus detuning, using the localized-pole residue."""
    if n_points < 2:
        raise ParameterError(f"n_points: must be >= 2, got {n_points!r}")
    m0 = squeezing.initial_moments(e)
    rows = []
    for delta in np.linspace(delta_lo, delta_hi, n_points):
        r = dataclasses.replace(r_template, delta=float(delta))
        p_inf = reservoir.steady_population(r)
        present = p_inf > 0.0
        _, zeta2 = _squeeze_at(p_inf, m0, e.n_atoms)
        rows.append(SweepRow(
            delta=float(delta),
            steady_population=p_inf,
            zeta2_inf=0.0 if zeta2 is None else zeta2,
            bound_state_present=present,
        ))
    return rows


def _bound_state_present(r_template: ReservoirParams, delta: float) -> bool:
    r = dataclasses.replace(r_template, delta=delta)
    return reservoir.find_roots(r).localized is not None


def locate_transition(r_template: ReservoirParams, e: EnsembleParams,
                      bracket: tuple[float, float]) -> float:
    """Bisect on localized-pole existence; the steady squeezing collapses with it.

    Only meaningful for the anisotropic model (the isotropic localized pole
    exists at every detuning, so its steady squeezing varies smoothly).
    """
    if r_template.model is not DispersionModel.ANISOTROPIC:
        raise ParameterError("transition location requires the anisotropic model")
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise ParameterError(f"bracket: need lo < hi, got {bracket!r}")
    if not _bound_state_present(r_template, lo):
        raise ParameterError(f"bracket: no bound state at delta = {lo!r}")
    if _bound_state_present(r_template, hi):
        raise ParameterError(f"bracket: bound state still present at delta = {hi!r}")
    width_target = 1e-4 * r_template.beta
    while hi - lo > width_target:
        mid = 0.5 * (lo + hi)
        if _bound_state_present(r_template, mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    max_deviation: float
    tolerance: float
    detail: str

    def __post_init__(self):
        object.__setattr__(self, "passed", bool(self.passed))
        object.__setattr__(self, "max_deviation", float(self.max_deviation))
        object.__setattr__(self, "tolerance", float(self.tolerance))


@dataclass(frozen=True)
class ValidationReport:
    suites: list[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "suites": [dataclasses.asdict(s) for s in self.suites],
        }


ORACLE_CASES_ISOTROPIC = (-10.0, -5.0, 0.0, 1.0, 5.0)
ORACLE_CASES_ANISOTROPIC = (-1.0, -0.2, 0.0, 0.2, 1.0)
ANISOTROPIC_OMEGA_C = 100.0


def closed_vs_oracle_deviation(r: ReservoirParams, grid: TimeGrid,
                               moment_fn=None) -> float:
    """sup_t |q_closed - q_oracle| on the grid (moment_fn is a fault-injection hook)."""
    closed = reservoir.amplitude(r, grid)
    if moment_fn is None:
        oracle = volterra.solve(r, grid).q
    else:
        n = grid.n_steps - 1
        oracle = volterra._solve_uniform(r, grid.t_max, 4 * n, moment_fn=moment_fn)[::4]
    return float(np.max(np.abs(closed.q - oracle)))


def _suite_oracle_agreement(model: DispersionModel, deltas, omega_c=None) -> SuiteResult:
    grid = TimeGrid(t_max=10.0, n_steps=401)
    worst = 0.0
    details = []
    for d in deltas:
        r = ReservoirParams(model=model, delta=d, beta=1.0, omega_c=omega_c)
        dev = closed_vs_oracle_deviation(r, grid)
        details.append(f"delta={d:g}: {dev:.3e}")
        worst = max(worst, dev)
    return SuiteResult(
        name=f"oracle_agreement_{model.value}",
        passed=worst <= 1e-3,
        max_deviation=worst,
        tolerance=1e-3,
        detail="; ".join(details),
    )


def _suite_decomposition_unity() -> SuiteResult:
    worst = 0.0
    for d in ORACLE_CASES_ISOTROPIC:
        worst = max(worst, reservoir._q0_residual(
            ReservoirParams(model=DispersionModel.ISOTROPIC, delta=d)))
    for d in ORACLE_CASES_ANISOTROPIC:
        worst = max(worst, reservoir._q0_residual(
            ReservoirParams(model=DispersionModel.ANISOTROPIC, delta=d, omega_c=ANISOTROPIC_OMEGA_C)))
    return SuiteResult("decomposition_unity", worst <= 1e-6, worst, 1e-6,
                       "poles + cut at t=0 versus 1")


def _suite_long_time_limit() -> SuiteResult:
    cases = [
        ReservoirParams(model=DispersionModel.ISOTROPIC, delta=-10.0),
        ReservoirParams(model=DispersionModel.ANISOTROPIC, delta=-1.0, omega_c=ANISOTROPIC_OMEGA_C),
        ReservoirParams(model=DispersionModel.ANISOTROPIC, delta=-0.2, omega_c=ANISOTROPIC_OMEGA_C),
    ]
    worst = 0.0
    for r in cases:
        grid = TimeGrid(t_max=50.0, n_steps=2)
        pop_50 = reservoir.amplitude(r, grid).population[-1]
        worst = max(worst, abs(pop_50 - reservoir.steady_population(r)))
    return SuiteResult("long_time_limit", worst <= 1e-3, worst, 1e-3,
                       "|q(50)|^2 versus steady population, gap-interior detunings")


def _suite_markovian_limit() -> SuiteResult:
    r = ReservoirParams(model=DispersionModel.FREE_SPACE, beta=1.0)
    grid = TimeGrid(t_max=10.0, n_steps=501)
    expected = np.exp(-grid.times)
    dev_closed = float(np.max(np.abs(reservoir.amplitude(r, grid).population - expected)))
    dev_oracle = float(np.max(np.abs(volterra.solve(r, grid).population - expected)))
    worst = max(dev_closed, dev_oracle)
    return SuiteResult("markovian_limit", worst <= 1e-8, worst, 1e-8,
                       f"closed: {dev_closed:.3e}; oracle: {dev_oracle:.3e}")


def _suite_squeezing_closed_vs_brute() -> SuiteResult:
    worst = 0.0
    for n in range(2, 11):
        for theta in (0.05 * math.pi, 0.15 * math.pi, 0.3 * math.pi):
            e = EnsembleParams(n_atoms=n, theta=theta)
            m0 = squeezing.initial_moments(e)
            for p in (0.0, 0.25, 0.5, 0.75, 1.0):
                closed = squeezing.xi_squared(squeezing.evolved_moments(m0, p), n)
                brute = squeezing.brute_force_xi(e, p)
                worst = max(worst, abs(closed.xi2 - brute.xi2))
    return SuiteResult("squeezing_closed_vs_brute", worst <= 1e-8, worst, 1e-8,
                       "N in 2..10, theta in {0.05, 0.15, 0.3} pi, p in {0, .25, .5, .75, 1}")


def _suite_channel_reduction() -> SuiteResult:
    sz_op = np.diag([1.0, -1.0]).astype(complex)
    s_plus = np.zeros((2, 2), dtype=complex)
    s_plus[0, 1] = 1.0
    s_minus = s_plus.T.conj()
    worst = 0.0
    for n in range(2, 11):
        for theta in (0.05 * math.pi, 0.15 * math.pi, 0.3 * math.pi):
            e = EnsembleParams(n_atoms=n, theta=theta)
            rho12 = squeezing.reduced_two_qubit(e)
            m0 = squeezing.initial_moments(e)
            for p in (0.25, 0.5, 0.75, 1.0):
                rho = apply_product_raw(rho12, kraus(p))
                got_sz = np.trace(rho @ np.kron(sz_op, np.eye(2))).real
                got_spm = np.trace(rho @ np.kron(s_plus, s_minus)).real
                got_smm = np.trace(rho @ np.kron(s_minus, s_minus))
                want = squeezing.evolved_moments(m0, p)
                worst = max(worst, abs(got_sz - want.sz), abs(got_spm - want.spm),
                            abs(got_smm - want.smm))
    return SuiteResult("channel_reduction", worst <= 1e-10, worst, 1e-10,
                       "two-qubit channel action versus evolved correlators")


def _suite_cptp_identity() -> SuiteResult:
    rng = np.random.default_rng(20240811)
    worst = 0.0
    for p in rng.uniform(0.0, 1.0, size=1000):
        k = kraus(float(p))
        ident = k.e1.conj().T @ k.e1 + k.e2.conj().T @ k.e2
        worst = max(worst, float(np.max(np.abs(ident - np.eye(2)))))
    return SuiteResult("cptp_identity", worst <= 1e-14, worst, 1e-14,
                       "e1†e1 + e2†e2 = 1 over 1000 random survivals")


def run_validation() -> ValidationReport:
    """Execute every oracle-agreement and self-consistency suite."""
    suites = [
        _suite_markovian_limit(),
        _suite_cptp_identity(),
        _suite_squeezing_closed_vs_brute(),
        _suite_channel_reduction(),
        _suite_decomposition_unity(),
        _suite_oracle_agreement(DispersionModel.ISOTROPIC, ORACLE_CASES_ISOTROPIC),
        _suite_oracle_agreement(DispersionModel.ANISOTROPIC, ORACLE_CASES_ANISOTROPIC,
                                omega_c=ANISOTROPIC_OMEGA_C),
        _suite_long_time_limit(),
    ]
    return ValidationReport(suites=suites)


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------

def _fmt(x: float | None) -> str:
    return "" if x is None else format(x, ".12g")


def timeseries_csv(rows: list[TimeSeriesRow]) -> str:
    lines = [f"# schema: {TIMESERIES_SCHEMA}", "t,population,xi2,zeta2"]
    for row in rows:
        lines.append(f"{_fmt(row.t)},{_fmt(row.population)},{_fmt(row.xi2)},{_fmt(row.zeta2)}")
    return "\n".join(lines) + "\n"


def sweep_csv(rows: list[SweepRow]) -> str:
    lines = [f"# schema: {SWEEP_SCHEMA}", "delta,steady_population,zeta2_inf,bound_state"]
    for row in rows:
        flag = "true" if row.bound_state_present else "false"
        lines.append(f"{_fmt(row.delta)},{_fmt(row.steady_population)},{_fmt(row.zeta2_inf)},{flag}")
    return "\n".join(lines) + "\n"


def transition_csv(delta_star: float) -> str:
    return f"# schema: {TRANSITION_SCHEMA}\ndelta_star\n{_fmt(delta_star)}\n"
