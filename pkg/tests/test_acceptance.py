"""Acceptance suite: one test per release criterion, each printing a pass line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion report.
"""

import math
import time

import numpy as np

from pcsqueeze.channel import apply_product_raw, kraus
from pcsqueeze.experiments import locate_transition, run_sweep, run_timeseries
from pcsqueeze.params import DispersionModel, EnsembleParams, ReservoirParams, TimeGrid
from pcsqueeze.reservoir import amplitude, steady_population
from pcsqueeze.squeezing import (
    brute_force_xi,
    evolved_moments,
    initial_moments,
    reduced_two_qubit,
    xi_squared,
)
from pcsqueeze.volterra import solve

ISO = lambda d: ReservoirParams(model=DispersionModel.ISOTROPIC, delta=d)
ANISO = lambda d: ReservoirParams(model=DispersionModel.ANISOTROPIC, delta=d, omega_c=100.0)
REF = EnsembleParams(n_atoms=10, theta=0.15 * math.pi)

THETAS = (0.05 * math.pi, 0.15 * math.pi, 0.3 * math.pi)
SURVIVALS = (0.25, 0.5, 0.75, 1.0)


def _report(criterion, passed, detail):
    print(f"{'PASS' if passed else 'FAIL'} {criterion}: {detail}")
    assert passed, f"{criterion}: {detail}"


def _zeta_inf(r, ensemble):
    p_inf = steady_population(r)
    return xi_squared(evolved_moments(initial_moments(ensemble), p_inf), ensemble.n_atoms).zeta2


def test_criterion_1_closed_vs_brute_force_squeezing():
    start = time.monotonic()
    worst = 0.0
    for n in range(2, 11):
        for theta in THETAS:
            e = EnsembleParams(n_atoms=n, theta=theta)
            m0 = initial_moments(e)
            for p in SURVIVALS:
                closed = xi_squared(evolved_moments(m0, p), n).xi2
                brute = brute_force_xi(e, p).xi2
                worst = max(worst, abs(closed - brute))
    elapsed = time.monotonic() - start
    _report(
        "criterion 1 (closed form vs brute-force definition)",
        worst <= 1e-8 and elapsed < 60.0,
        f"max |xi2_closed - xi2_brute| = {worst:.3e} (tol 1e-8), runtime {elapsed:.1f}s (< 60s)",
    )


def test_criterion_2_channel_reduction_equivalence():
    sz = np.diag([1.0, -1.0]).astype(complex)
    sp = np.array([[0, 1], [0, 0]], dtype=complex)
    sm = sp.conj().T
    worst = 0.0
    for n in range(2, 11):
        for theta in THETAS:
            e = EnsembleParams(n_atoms=n, theta=theta)
            rho12 = reduced_two_qubit(e)
            m0 = initial_moments(e)
            for p in SURVIVALS:
                rho = apply_product_raw(rho12, kraus(p))
                want = evolved_moments(m0, p)
                worst = max(
                    worst,
                    abs(np.trace(rho @ np.kron(sz, np.eye(2))).real - want.sz),
                    abs(np.trace(rho @ np.kron(sp, sm)).real - want.spm),
                    abs(np.trace(rho @ np.kron(sm, sm)) - want.smm),
                )
    _report(
        "criterion 2 (channel-reduction equivalence)",
        worst <= 1e-10,
        f"max correlator deviation = {worst:.3e} (tol 1e-10)",
    )


def test_criterion_3_cptp_identity():
    rng = np.random.default_rng(1234)
    worst = 0.0
    for p in rng.uniform(0.0, 1.0, size=1000):
        k = kraus(float(p))
        ident = k.e1.conj().T @ k.e1 + k.e2.conj().T @ k.e2
        worst = max(worst, float(np.max(np.abs(ident - np.eye(2)))))
    _report(
        "criterion 3 (CPTP identity)",
        worst <= 1e-14,
        f"max |e1†e1 + e2†e2 - 1| = {worst:.3e} over 1000 survivals (tol 1e-14)",
    )


def test_criterion_4_oracle_agreement():
    start = time.monotonic()
    grid = TimeGrid(t_max=10.0, n_steps=401)
    worst = 0.0
    details = []
    for r in [ISO(d) for d in (-10.0, -5.0, 0.0, 1.0, 5.0)] + \
             [ANISO(d) for d in (-1.0, -0.2, 0.0, 0.2, 1.0)]:
        dev = float(np.max(np.abs(amplitude(r, grid).q - solve(r, grid).q)))
        details.append(f"{r.model.value} delta={r.delta:g}: {dev:.2e}")
        worst = max(worst, dev)
    elapsed = time.monotonic() - start
    _report(
        "criterion 4 (closed form vs independent memory-kernel solver)",
        worst <= 1e-3 and elapsed < 300.0,
        f"sup_t |q_closed - q_oracle| = {worst:.3e} (tol 1e-3), runtime {elapsed:.1f}s (< 300s); "
        + "; ".join(details),
    )


def test_criterion_5_time_evolution_phenomenology():
    zeta0_closed = xi_squared(initial_moments(REF), REF.n_atoms).zeta2
    zeta0_brute = 1.0 - brute_force_xi(REF, 1.0).xi2
    zeta_deep = _zeta_inf(ISO(-10.0), REF)
    zeta_mid = _zeta_inf(ISO(-5.0), REF)
    rows = run_timeseries(ISO(5.0), REF, TimeGrid(t_max=10.0, n_steps=51))
    zeta_out_t10 = rows[-1].zeta2
    ok = (
        abs(zeta0_closed - 0.67) <= 0.01
        and abs(zeta0_brute - 0.67) <= 0.01
        and zeta_deep > zeta_mid > 0.0
        and zeta_out_t10 < 0.01
    )
    _report(
        "criterion 5 (time-evolution phenomenology)",
        ok,
        f"zeta2(0) = {zeta0_closed:.4f} (brute {zeta0_brute:.4f}, want 0.67 +/- 0.01); "
        f"zeta2_inf(-10) = {zeta_deep:.4f} > zeta2_inf(-5) = {zeta_mid:.4f} > 0; "
        f"zeta2(t=10, delta=+5) = {zeta_out_t10:.2e} < 0.01",
    )


def test_criterion_6_smooth_isotropic_sweep():
    rows = run_sweep(ISO(0.0), REF, -10.0, 10.0, 81)
    zetas = [row.zeta2_inf for row in rows]
    monotone = all(zetas[i] >= zetas[i + 1] - 1e-9 for i in range(len(zetas) - 1))
    z_plus1 = _zeta_inf(ISO(1.0), REF)
    z_plus5 = _zeta_inf(ISO(5.0), REF)
    _report(
        "criterion 6 (smooth isotropic steady-state sweep)",
        monotone and z_plus1 > 0.0 and z_plus5 > 0.0,
        f"sampled monotone nonincreasing over [-10, 10] ({len(rows)} points, slack 1e-9); "
        f"zeta2_inf(+1) = {z_plus1:.3e} > 0, zeta2_inf(+5) = {z_plus5:.3e} > 0",
    )


def test_criterion_7_anisotropic_sudden_transition():
    delta_star = locate_transition(ANISO(0.0), REF, (0.0, 0.2))
    above_1 = _zeta_inf(ANISO(delta_star + 0.01), REF)
    above_2 = _zeta_inf(ANISO(delta_star + 0.05), REF)
    below = _zeta_inf(ANISO(delta_star - 0.05), REF)
    ok = (0.05 <= delta_star <= 0.15) and above_1 == 0.0 and above_2 == 0.0 and below >= 0.3
    _report(
        "criterion 7 (anisotropic sudden transition)",
        ok,
        f"delta_star = {delta_star:.5f} in [0.05, 0.15]; zeta2_inf just above = {above_1}, "
        f"further above = {above_2} (both exactly 0); "
        f"zeta2_inf(delta_star - 0.05) = {below:.4f} >= 0.3",
    )


def test_criterion_8_markovian_limit():
    r = ReservoirParams(model=DispersionModel.FREE_SPACE, beta=1.0)
    grid = TimeGrid(t_max=10.0, n_steps=501)
    expected = np.exp(-grid.times)
    dev_closed = float(np.max(np.abs(amplitude(r, grid).population - expected)))
    dev_oracle = float(np.max(np.abs(solve(r, grid).population - expected)))
    _report(
        "criterion 8 (Markovian limit)",
        dev_closed <= 1e-8 and dev_oracle <= 1e-8,
        f"closed-form deviation {dev_closed:.3e}, solver deviation {dev_oracle:.3e} (tol 1e-8)",
    )


def test_criterion_9_note_for_secondary_component():
    # criterion 9 exercises the figure renderer, which lives in frontend/ with
    # its own build and test suite (npm test); nothing to run from Python
    print("NOTE criterion 9 (figure rendering) is covered by the frontend test suite")
