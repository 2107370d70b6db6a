import math

import numpy as np
import pytest
from scipy.integrate import quad

from pcsqueeze.errors import ConvergenceError
from pcsqueeze.params import DispersionModel, ReservoirParams, TimeGrid
from pcsqueeze.reservoir import AmplitudeSource, amplitude, steady_population
from pcsqueeze.volterra import _moments, _solve_uniform, kernel_for, solve

ISO = lambda d: ReservoirParams(model=DispersionModel.ISOTROPIC, delta=d)
ANISO = lambda d: ReservoirParams(model=DispersionModel.ANISOTROPIC, delta=d, omega_c=100.0)
FREE = ReservoirParams(model=DispersionModel.FREE_SPACE)

TRANSFORM_POINTS = [0.7 + 0.3j, 1.0 + 1.0j, 1.5 - 0.8j, 2.0 + 0.0j, 0.5 + 2.0j,
                    3.0 + 1.0j, 1.0 - 2.0j, 2.5 + 0.5j, 0.8 - 0.4j, 4.0 + 2.0j]


def numeric_laplace(time_kernel, s, upper=40.0):
    """Quadrature of the transform integral; w = sqrt(t) removes the origin singularity."""
    value, _ = quad(lambda w: time_kernel(w * w) * np.exp(-s * w * w) * 2.0 * w,
                    0.0, upper, complex_func=True, limit=800, epsabs=1e-13, epsrel=1e-11)
    return value


def test_kernel_free_space_is_markovian():
    spec = kernel_for(FREE)
    assert spec.laplace_transform(1.0 + 1.0j) == 0.5
    assert spec.laplace_transform(37.0) == 0.5
    assert spec.time_kernel is None
    assert spec.dirac_weight == 1.0
    assert spec.singular_exponent is None


def test_kernel_isotropic_edge_form():
    # at delta = 0 the transform is proportional to 1/sqrt(-i s)
    spec = kernel_for(ISO(0.0))
    for s in (2.0 + 0.0j, 1.0 + 1.0j):
        assert spec.laplace_transform(s) == pytest.approx(-1j / np.sqrt(-1j * s), abs=1e-15)


def test_kernel_singular_exponent_documented():
    assert kernel_for(ISO(-5.0)).singular_exponent == 0.5
    assert kernel_for(ANISO(-0.2)).singular_exponent == 0.5


def test_isotropic_transform_match_at_reference_point():
    spec = kernel_for(ISO(-5.0))
    s = 1.0 + 1.0j
    assert abs(numeric_laplace(spec.time_kernel, s) - spec.laplace_transform(s)) <= 1e-6


@pytest.mark.parametrize("params", [ISO(-5.0), ISO(0.0), ISO(2.0), ANISO(-1.0), ANISO(0.2)])
def test_transform_match_ten_point_grid(params):
    spec = kernel_for(params)
    for s in TRANSFORM_POINTS:
        assert abs(numeric_laplace(spec.time_kernel, s) - spec.laplace_transform(s)) <= 1e-6


def test_solve_free_space_matches_exponential():
    grid = TimeGrid(t_max=10.0, n_steps=501)
    series = solve(FREE, grid)
    assert series.source is AmplitudeSource.VOLTERRA_ORACLE
    assert np.max(np.abs(series.q - np.exp(-0.5 * grid.times))) <= 1e-8
    assert np.max(np.abs(series.population - np.exp(-grid.times))) <= 1e-8


def test_solve_initial_condition():
    grid = TimeGrid(t_max=5.0, n_steps=101)
    for p in (ISO(-5.0), ANISO(-0.2), FREE):
        assert solve(p, grid).q[0] == 1.0


def test_solve_plateau_matches_steady_population():
    p = ISO(-10.0)
    series = solve(p, TimeGrid(t_max=50.0, n_steps=2001))
    assert abs(series.population[-1] - steady_population(p)) <= 1e-3


def test_step_halving_within_tolerance():
    p = ISO(-5.0)
    q_h = _solve_uniform(p, 10.0, 2000)
    q_h2 = _solve_uniform(p, 10.0, 4000)
    assert np.max(np.abs(q_h - q_h2[::2])) <= 1e-4


def test_solve_raises_when_budget_exhausted():
    # an absurdly coarse grid cannot converge within the refinement budget
    with pytest.raises(ConvergenceError):
        solve(ISO(-10.0), TimeGrid(t_max=200.0, n_steps=3))


def test_population_bounded_on_accepted_runs():
    for p in (ISO(-10.0), ANISO(-1.0)):
        series = solve(p, TimeGrid(t_max=10.0, n_steps=401))
        assert series.population.min() >= 0.0
        assert series.population.max() <= 1.0


def test_kernel_phase_fault_breaks_oracle_agreement():
    # multiplying the kernel by e^{i pi/2} must push closed-form agreement
    # far beyond tolerance; guards against silent phase-convention drift
    p = ISO(-5.0)
    grid = TimeGrid(t_max=10.0, n_steps=401)
    closed = amplitude(p, grid).q

    def faulted(h, n):
        m0, m1 = _moments(p, h, n)
        return 1j * m0, 1j * m1

    q_bad = _solve_uniform(p, grid.t_max, 4 * (grid.n_steps - 1), moment_fn=faulted)[::4]
    assert np.max(np.abs(closed - q_bad)) > 1e-3
    q_good = _solve_uniform(p, grid.t_max, 4 * (grid.n_steps - 1))[::4]
    assert np.max(np.abs(closed - q_good)) <= 1e-3
