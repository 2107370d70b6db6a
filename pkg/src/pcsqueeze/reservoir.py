"""Excited-state amplitude q(t) of one emitter coupled to a structured reservoir.

Laplace-domain formulation: q~(s) = 1/D(s) with D(s) = s + K(s), where K is the
transform of the memory kernel for each dispersion model (beta = rate scale,
delta = detuning from the band edge, omega_c = band-edge frequency):

    isotropic:    K(s) = -i beta^(3/2) / sqrt(-i s - delta)
    anisotropic:  K(s) = -i beta^(3/2) / (sqrt(omega_c) + sqrt(-i s - delta))
    free space:   K(s) = beta / 2            (pure exponential limit)

Square roots are principal. D has a branch point at s = i*delta; the inversion
contour wraps a cut taken along the leftward ray s = i*delta - z, z >= 0, so

    q(t) = sum over poles of e^(s t)/D'(s)  +  diffusion integral,

where the diffusion integral is the discontinuity of 1/D across the cut and
carries the e^(i delta t) e^(-z t) envelope. Two kinds of pole can occur on the
cut plane:

  * localized: purely imaginary s = i u with u > max(0, delta); never decays
    and its squared residue is the surviving steady-state population. On this
    part of the axis sqrt(-i s - delta) is evaluated directly (continuous from
    the right half-plane).
  * propagating: complex s with Re(s) < 0 and Im(s) < delta; reaching below the
    branch point requires the continuation sqrt(-i s - delta) = -i sqrt(i s + delta),
    which is what propagating_root_equation evaluates.

For the anisotropic model the compact residue denominators
localized/propagating_residue_denominator(s) agree with the root-equation
derivative exactly at the poles (and for the isotropic model they are the
derivative); amplitude() always uses the derivative form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .errors import (
    ConsistencyError,
    ConvergenceError,
    ParameterError,
    PathSingularityError,
    SingularInputError,
)
from .params import DispersionModel, ReservoirParams, TimeGrid

_SCAN_POINTS = 1000          # sign-change scan density for the localized root
_SCAN_SPAN = 50.0            # scan window above max(0, delta), in units of beta
_NEWTON_TOL = 1e-13
_RESIDUAL_BOUND = 1e-12      # accepted |root equation| at a reported root
_Q0_TOL = 1e-6               # decomposition-unity requirement at t = 0
_T_FLOOR = 1e-3              # quadrature scale floor, units of 1/beta


class AmplitudeSource(str, Enum):
    CLOSED_FORM = "closed_form"
    VOLTERRA_ORACLE = "volterra_oracle"


@dataclass(frozen=True)
class RootSet:
    """Located poles of 1/D with their root-equation residuals.

    An absent pole is a legitimate result; the reason records whether the
    bracket had no sign change or the polish left the physical region.
    """

    model: DispersionModel
    localized: complex | None
    propagating: complex | None
    residual_localized: float | None
    residual_propagating: float | None
    localized_absent_reason: str | None = None
    propagating_absent_reason: str | None = None


@dataclass(frozen=True)
class AmplitudeSeries:
    """Amplitude samples on a time grid with their survival populations."""

    grid: TimeGrid
    q: np.ndarray
    population: np.ndarray
    source: AmplitudeSource

    def __post_init__(self):
        pop = np.asarray(self.population, dtype=float)
        if abs(pop[0] - 1.0) > 1e-12:
            raise ConsistencyError(f"population[0] = {pop[0]!r}, expected 1")
        if pop.min() < 0.0 or pop.max() > 1.0 + 1e-9:
            raise ConsistencyError("population left [0, 1]")


def _beta32(p: ReservoirParams) -> float:
    return p.beta ** 1.5


def _require_structured(p: ReservoirParams):
    if p.model is DispersionModel.FREE_SPACE:
        raise ParameterError("free-space model has no structured-reservoir poles")


def localized_root_equation(x: complex, p: ReservoirParams) -> complex:
    """Pole condition on the branch continuous across the upper imaginary axis."""
    _require_structured(p)
    w = -1j * x - p.delta
    if w == 0:
        raise SingularInputError(f"branch point: -i*x - delta = 0 at x = {x!r}")
    root = np.sqrt(complex(w))
    if p.model is DispersionModel.ISOTROPIC:
        return x - 1j * _beta32(p) / root
    return x - 1j * _beta32(p) / (math.sqrt(p.omega_c) + root)


def propagating_root_equation(y: complex, p: ReservoirParams) -> complex:
    """Pole condition continued below the branch point (Re < 0, Im < delta region)."""
    _require_structured(p)
    w = 1j * y + p.delta
    if w == 0:
        raise SingularInputError(f"branch point: i*y + delta = 0 at y = {y!r}")
    root = np.sqrt(complex(w))
    if p.model is DispersionModel.ISOTROPIC:
        return y + _beta32(p) / root
    return y - 1j * _beta32(p) / (math.sqrt(p.omega_c) - 1j * root)


def localized_residue_denominator(x: complex, p: ReservoirParams) -> complex:
    """Reciprocal of the localized-pole residue, compact form."""
    _require_structured(p)
    w = -1j * x - p.delta
    if w == 0:
        raise SingularInputError(f"branch point: -i*x - delta = 0 at x = {x!r}")
    w = complex(w)
    if p.model is DispersionModel.ISOTROPIC:
        return 1.0 + 0.5 * _beta32(p) * w**-1.5
    return 1.0 - x**2 / (2.0 * _beta32(p) * np.sqrt(w))


def propagating_residue_denominator(y: complex, p: ReservoirParams) -> complex:
    """Reciprocal of the propagating-pole residue, compact form."""
    _require_structured(p)
    w = 1j * y + p.delta
    if w == 0:
        raise SingularInputError(f"branch point: i*y + delta = 0 at y = {y!r}")
    w = complex(w)
    if p.model is DispersionModel.ISOTROPIC:
        return 1.0 - 0.5j * _beta32(p) * w**-1.5
    return 1.0 - 1j * y**2 / (2.0 * _beta32(p) * np.sqrt(w))


def _droot_localized(x: complex, p: ReservoirParams) -> complex:
    """d/ds of the localized root equation (equals the residue denominator at poles)."""
    w = complex(-1j * x - p.delta)
    if p.model is DispersionModel.ISOTROPIC:
        return 1.0 + 0.5 * _beta32(p) * w**-1.5
    q = np.sqrt(w)
    return 1.0 + _beta32(p) / (2.0 * q * (math.sqrt(p.omega_c) + q) ** 2)


def _droot_propagating(y: complex, p: ReservoirParams) -> complex:
    w = complex(1j * y + p.delta)
    if p.model is DispersionModel.ISOTROPIC:
        return 1.0 - 0.5j * _beta32(p) * w**-1.5
    r = np.sqrt(w)
    return 1.0 + 1j * _beta32(p) / (2.0 * r * (math.sqrt(p.omega_c) - 1j * r) ** 2)


# ---------------------------------------------------------------------------
# root finding
# ---------------------------------------------------------------------------

def _localized_condition_real(u: float, p: ReservoirParams) -> float:
    """Real form of the localized condition on s = i u, u > max(0, delta)."""
    if p.model is DispersionModel.ISOTROPIC:
        return u - _beta32(p) / math.sqrt(u - p.delta)
    return u - _beta32(p) / (math.sqrt(p.omega_c) + math.sqrt(u - p.delta))


def _find_localized(p: ReservoirParams):
    """Bisection along the imaginary axis; returns (u, None) or (None, reason)."""
    base = max(0.0, p.delta)
    # strictly above the branch point even when the additive epsilon would be absorbed
    lo = max(float(np.nextafter(base, np.inf)), base + 1e-18 * max(1.0, abs(base), p.beta))
    span = _SCAN_SPAN * p.beta
    us = lo + span * (np.arange(_SCAN_POINTS + 1) / _SCAN_POINTS) ** 2  # denser near lo
    vals = np.array([_localized_condition_real(u, p) for u in us])
    crossings = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
    if vals[0] > 0 or len(crossings) == 0:
        return None, "no sign change in bracket"
    i = crossings[0]
    u = brentq(lambda v: _localized_condition_real(v, p), us[i], us[i + 1], xtol=1e-15, rtol=1e-15)
    return float(u), None


def _newton_polish(f, df, seed: complex, p: ReservoirParams) -> complex | None:
    y = complex(seed)
    scale = max(1.0, p.beta ** 1.5)
    for _ in range(80):
        try:
            fy = f(y, p)
        except SingularInputError:
            return None
        if abs(fy) < _NEWTON_TOL * scale:
            return y
        step = fy / df(y, p)
        lam = 1.0
        while lam > 1e-8:
            cand = y - lam * step
            try:
                if abs(f(cand, p)) < abs(fy):
                    break
            except SingularInputError:
                pass
            lam *= 0.5
        else:
            return None
        y = y - lam * step
    return None


def _find_propagating(p: ReservoirParams):
    """Damped Newton polish of grid-scanned and weak-coupling seeds.

    Only roots in the physical region {Re < 0, Im < delta} are reported.
    """
    b32 = _beta32(p)
    seeds: list[complex] = []
    if abs(p.delta) > 1e-12 * p.beta:
        wroot = np.sqrt(complex(-1j * p.delta))
        if p.model is DispersionModel.ISOTROPIC:
            seeds.append(-b32 * cmath.exp(-0.25j * math.pi) / wroot)
        else:
            seeds.append(1j * b32 / (math.sqrt(p.omega_c) + wroot))
    span = 4.0 * (abs(p.delta) + p.beta)
    eps = 1e-4 * p.beta
    re = np.linspace(-span, -eps, 48)
    im = np.linspace(p.delta - span, p.delta - eps, 48)
    grid = re[None, :] + 1j * im[:, None]
    vals = np.abs(np.vectorize(lambda z: propagating_root_equation(z, p))(grid))
    order = np.argsort(vals.ravel())[:4]
    seeds.extend(grid.ravel()[order])

    for seed in seeds:
        root = _newton_polish(propagating_root_equation, _droot_propagating, seed, p)
        if root is None:
            continue
        if root.real < 0 and root.imag < p.delta:
            return root, None
        return None, "polish converged outside the physical region"
    return None, "no convergence from any seed"


def find_roots(p: ReservoirParams) -> RootSet:
    """Locate the localized and propagating poles; absence is a result, not an error."""
    _require_structured(p)
    u, loc_reason = _find_localized(p)
    localized = None if u is None else 1j * u
    res_loc = None if localized is None else abs(localized_root_equation(localized, p))
    prop, prop_reason = _find_propagating(p)
    res_prop = None if prop is None else abs(propagating_root_equation(prop, p))
    return RootSet(
        model=p.model,
        localized=localized,
        propagating=prop,
        residual_localized=res_loc,
        residual_propagating=res_prop,
        localized_absent_reason=loc_reason,
        propagating_absent_reason=prop_reason,
    )


def steady_population(p: ReservoirParams) -> float:
    """Surviving population in the long-time limit: |residue of the localized pole|^2."""
    if p.model is DispersionModel.FREE_SPACE:
        return 0.0
    u, _ = _find_localized(p)
    if u is None:
        return 0.0
    return float(abs(1.0 / _droot_localized(1j * u, p)) ** 2)


# ---------------------------------------------------------------------------
# branch-cut (diffusion-field) integral
# ---------------------------------------------------------------------------

def _cut_num_den(p: ReservoirParams):
    b32 = _beta32(p)
    b3 = p.beta ** 3
    delta = p.delta
    if p.model is DispersionModel.ISOTROPIC:

        def num(z):
            return b32 * np.sqrt(-1j * z)

        def den(z):
            return 1j * b3 - z * (1j * delta - z) ** 2

    else:
        wc = p.omega_c

        def num(z):
            return b32 * np.sqrt(1j * z) * (wc - 1j * z)

        def den(z):
            return 1j * b3 * z - ((delta + 1j * z) * (wc - 1j * z) - math.sqrt(wc) * b32) ** 2

    return num, den


def _check_cut_path(p: ReservoirParams):
    """Reject parameter sets whose cut integrand has a pole on the path."""
    num, den = _cut_num_den(p)
    z = np.concatenate([np.logspace(-10, 3, 300), np.linspace(1e-3, 1e3, 300)]) * p.beta
    d = den(z)
    if p.model is DispersionModel.ISOTROPIC:
        scale = np.abs(z) * np.abs(1j * p.delta - z) ** 2 + p.beta ** 3
    else:
        scale = (
            p.beta ** 3 * z
            + (np.abs((p.delta + 1j * z) * (p.omega_c - 1j * z)) + math.sqrt(p.omega_c) * _beta32(p)) ** 2
        )
    rel = np.abs(d) / scale
    if rel.min() < 1e-9:
        zbad = z[int(np.argmin(rel))]
        raise PathSingularityError(
            f"cut integrand denominator vanishes on the path near z = {zbad:.6g}"
        )


def diffusion_integral(p: ReservoirParams, t: float) -> complex:
    """Branch-cut contribution to q(t) by adaptive quadrature.

    The substitution z = w^2 / max(t, t0) removes the sqrt(z) endpoint
    singularity and keeps the e^(-z t) envelope resolved at every t.
    """
    if t < 0:
        raise ParameterError(f"t: must be >= 0, got {t!r}")
    if p.model is DispersionModel.FREE_SPACE:
        return 0.0 + 0.0j
    _check_cut_path(p)
    num, den = _cut_num_den(p)
    t_eff = max(t, _T_FLOOR / p.beta)

    def integrand(w):
        z = w * w / t_eff
        return num(z) * np.exp(-z * t) * (2.0 * w / t_eff) / den(z)

    value, abserr = quad(integrand, 0.0, np.inf, complex_func=True,
                         epsabs=1e-13, epsrel=1e-10, limit=400)
    err = max(abs(abserr.real), abs(abserr.imag)) if isinstance(abserr, complex) else abserr
    if err > max(1e-8, 1e-6 * abs(value)):
        raise ConvergenceError(
            f"cut quadrature error {err:.3g} exceeds tolerance at t = {t!r}"
        )
    return complex(cmath.exp(1j * p.delta * t) / math.pi * value)


# ---------------------------------------------------------------------------
# amplitude assembly
# ---------------------------------------------------------------------------

def _pole_terms(p: ReservoirParams):
    roots = find_roots(p)
    terms = []
    if roots.localized is not None:
        terms.append((roots.localized, 1.0 / _droot_localized(roots.localized, p)))
    if roots.propagating is not None:
        terms.append((roots.propagating, 1.0 / _droot_propagating(roots.propagating, p)))
    return terms


def _q0_residual(p: ReservoirParams) -> float:
    """|q(0) - 1| of the pole-plus-cut decomposition (unity self-check)."""
    if p.model is DispersionModel.FREE_SPACE:
        return 0.0
    total = diffusion_integral(p, 0.0)
    for _, res in _pole_terms(p):
        total += res
    return abs(total - 1.0)


def amplitude(p: ReservoirParams, grid: TimeGrid) -> AmplitudeSeries:
    """Closed-form q(t) on the grid; population clipped to [0, 1] after checks."""
    ts = grid.times
    if p.model is DispersionModel.FREE_SPACE:
        q = np.exp(-0.5 * p.beta * ts).astype(complex)
    else:
        terms = _pole_terms(p)
        q = np.zeros(len(ts), dtype=complex)
        for pole, res in terms:
            q += res * np.exp(pole * ts)
        q += np.array([diffusion_integral(p, float(t)) for t in ts])
        if abs(q[0] - 1.0) > _Q0_TOL:
            raise ConsistencyError(
                f"decomposition gives q(0) = {q[0]!r}; pole/cut bookkeeping inconsistent"
            )
        q[0] = 1.0  # exact initial condition once the decomposition check passed
    population = np.abs(q) ** 2
    if population.max() > 1.0 + 1e-9:
        raise ConsistencyError(f"population exceeded 1 by {population.max() - 1.0:.3g}")
    return AmplitudeSeries(
        grid=grid,
        q=q,
        population=np.clip(population, 0.0, 1.0),
        source=AmplitudeSource.CLOSED_FORM,
    )
