import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcsqueeze.errors import ParameterError
from pcsqueeze.params import (
    DispersionModel,
    EnsembleParams,
    ReservoirParams,
    TimeGrid,
    parse_config_text,
    to_config_text,
)


def test_parse_isotropic_with_defaults():
    r, e, g = parse_config_text("model=isotropic\ndelta=-10\nbeta=1\n")
    assert r.model is DispersionModel.ISOTROPIC
    assert r.delta == -10.0
    assert r.beta == 1.0
    assert e.n_atoms == 10
    assert e.theta == pytest.approx(0.15 * math.pi, abs=0)
    assert g.n_steps >= 2


def test_parse_anisotropic_accepted():
    r, _, _ = parse_config_text("model=anisotropic\ndelta=0.1\nomega_c=100\n")
    assert r.model is DispersionModel.ANISOTROPIC
    assert r.delta == 0.1
    assert r.omega_c == 100.0


def test_parse_anisotropic_missing_omega_c_names_key():
    with pytest.raises(ParameterError, match="omega_c"):
        parse_config_text("model=anisotropic\ndelta=0.1\n")


def test_parse_missing_model():
    with pytest.raises(ParameterError, match="model"):
        parse_config_text("delta=0.1\n")


def test_parse_unknown_key_named():
    with pytest.raises(ParameterError, match="gamma"):
        parse_config_text("model=isotropic\ngamma=2\n")


def test_parse_comments_and_blank_lines():
    r, _, g = parse_config_text("# header\nmodel = isotropic  # trailing\n\nt_max = 5\nn_steps = 20\n")
    assert r.model is DispersionModel.ISOTROPIC
    assert g.t_max == 5.0 and g.n_steps == 20


def test_parse_reports_offending_value():
    with pytest.raises(ParameterError, match="-2"):
        parse_config_text("model=isotropic\nbeta=-2\n")


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(model=DispersionModel.ISOTROPIC, beta=0.0),
        dict(model=DispersionModel.ISOTROPIC, beta=-1.0),
        dict(model=DispersionModel.ISOTROPIC, delta=math.inf),
        dict(model=DispersionModel.ANISOTROPIC, omega_c=None),
        dict(model=DispersionModel.ANISOTROPIC, omega_c=-5.0),
        dict(model=DispersionModel.ANISOTROPIC, omega_c=1.0, delta=2.0),
    ],
)
def test_reservoir_invariant_rejections(kwargs):
    with pytest.raises(ParameterError):
        ReservoirParams(**kwargs)


def test_omega_c_ignored_outside_anisotropic():
    r = ReservoirParams(model=DispersionModel.ISOTROPIC, omega_c=7.0)
    assert r.omega_c is None


@pytest.mark.parametrize("n_atoms,theta", [(1, 0.3), (0, 0.3), (10, 0.0), (10, math.pi), (10, -0.1)])
def test_ensemble_boundary_rejections(n_atoms, theta):
    with pytest.raises(ParameterError):
        EnsembleParams(n_atoms=n_atoms, theta=theta)


@pytest.mark.parametrize("t_max,n_steps", [(0.0, 10), (-1.0, 10), (1.0, 1), (1.0, 0)])
def test_grid_boundary_rejections(t_max, n_steps):
    with pytest.raises(ParameterError):
        TimeGrid(t_max=t_max, n_steps=n_steps)


def test_grid_times_start_at_zero_and_increase():
    g = TimeGrid(t_max=4.0, n_steps=9)
    ts = g.times
    assert ts[0] == 0.0 and ts[-1] == 4.0
    assert (ts[1:] > ts[:-1]).all()


@settings(max_examples=100, deadline=None)
@given(
    model=st.sampled_from(list(DispersionModel)),
    delta=st.floats(-50, 50),
    beta=st.floats(0.01, 100),
    omega_c=st.floats(60, 1000),
    n_atoms=st.integers(2, 30),
    theta=st.floats(1e-3, math.pi - 1e-3),
    t_max=st.floats(0.1, 100),
    n_steps=st.integers(2, 5000),
)
def test_config_round_trip(model, delta, beta, omega_c, n_atoms, theta, t_max, n_steps):
    r = ReservoirParams(model=model, delta=delta, beta=beta,
                        omega_c=omega_c if model is DispersionModel.ANISOTROPIC else None)
    e = EnsembleParams(n_atoms=n_atoms, theta=theta)
    g = TimeGrid(t_max=t_max, n_steps=n_steps)
    assert parse_config_text(to_config_text(r, e, g)) == (r, e, g)
