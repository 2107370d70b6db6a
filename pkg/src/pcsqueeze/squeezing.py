"""Twisted-state correlators and the phase-sensitivity squeezing parameter.

The closed forms exploit exchange symmetry: for N identical, independently
decohering qubits the collective squeezing parameter reduces to three two-qubit
quantities, the single-qubit inversion <sz(1)>, the exchange correlator
<s+(1) s-(2)> and the pair coherence <s-(1) s-(2)>.

The brute-force routines realise the definitions literally on the full
2^N-dimensional register (the twisted state itself is built in the symmetric
collective sector, which the twisting preserves) and exist to validate the
closed forms; they are deliberately independent of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import comb

from .channel import apply_product_raw, kraus
from .errors import ParameterError, SingularMeanSpinError
from .params import EnsembleParams

_SLACK = 1e-9


@dataclass(frozen=True)
class Moments:
    """Two-qubit correlators that determine the collective squeezing."""

    sz: float
    spm: float
    smm: complex

    def __post_init__(self):
        if abs(self.sz) > 1.0 + _SLACK:
            raise ParameterError(f"sz: |sz| must not exceed 1, got {self.sz!r}")
        if not (-_SLACK <= self.spm <= 0.5 + _SLACK):
            raise ParameterError(f"spm: must lie in [0, 1/2], got {self.spm!r}")
        if abs(self.smm) > 0.5 + _SLACK:
            raise ParameterError(f"smm: |smm| must not exceed 1/2, got {self.smm!r}")


@dataclass(frozen=True)
class SqueezingValue:
    """xi2 is the phase-sensitivity ratio; zeta2 = max(0, 1 - xi2) exactly."""

    xi2: float
    zeta2: float

    def __post_init__(self):
        if self.xi2 < 0:
            raise ParameterError(f"xi2: must be >= 0, got {self.xi2!r}")
        if self.zeta2 != max(0.0, 1.0 - self.xi2):
            raise ParameterError("zeta2 must equal max(0, 1 - xi2) exactly")

    @classmethod
    def from_xi2(cls, xi2: float) -> "SqueezingValue":
        return cls(xi2=xi2, zeta2=max(0.0, 1.0 - xi2))


def initial_moments(e: EnsembleParams) -> Moments:
    """Correlators of the one-axis twisted state (cos**0 == 1 covers N = 2)."""
    n, th = e.n_atoms, e.theta
    c_half = math.cos(th / 2.0)
    sz = -(c_half ** (n - 1))
    spm = (1.0 - math.cos(th) ** (n - 2)) / 8.0
    smm = -(1.0 - math.cos(th) ** (n - 2)) / 8.0 - 0.5j * math.sin(th / 2.0) * c_half ** (n - 2)
    return Moments(sz=sz, spm=spm, smm=smm)


def evolved_moments(m0: Moments, p_surv: float) -> Moments:
    """Correlators after every qubit passes the damping channel with survival p."""
    if not (0.0 <= p_surv <= 1.0) or not math.isfinite(p_surv):
        raise ParameterError(f"p_surv: must lie in [0, 1], got {p_surv!r}")
    return Moments(
        sz=p_surv * m0.sz + p_surv - 1.0,
        spm=p_surv * m0.spm,
        smm=p_surv * m0.smm,
    )


def xi_squared(m: Moments, n_atoms: int) -> SqueezingValue:
    """Squeezing parameter from the two-qubit correlators."""
    if n_atoms < 2:
        raise ParameterError(f"n_atoms: must be >= 2, got {n_atoms!r}")
    if abs(m.sz) < 1e-15:
        raise SingularMeanSpinError("mean spin vanishes; squeezing parameter undefined")
    xi2 = (1.0 + 2.0 * (n_atoms - 1) * (m.spm - abs(m.smm))) / m.sz**2
    return SqueezingValue.from_xi2(xi2)


# ---------------------------------------------------------------------------
# brute-force oracles
# ---------------------------------------------------------------------------

def _collective_lowering(n: int) -> np.ndarray:
    """J- in the symmetric sector, basis indexed by excitation count k = 0..N."""
    k = np.arange(1, n + 1)
    # J-|k> = sqrt(k (N - k + 1)) |k-1>
    return np.diag(np.sqrt(k * (n - k + 1.0)), 1)


def twisted_state_symmetric(e: EnsembleParams) -> np.ndarray:
    """One-axis twisted state exp(-i theta Jx^2 / 2)|all ground> in the symmetric sector.

    The all-ground state is symmetric and Jx^2 preserves the sector, so the
    (N+1)-dimensional representation is exact; the exponential acts through the
    eigendecomposition of the tridiagonal Jx.
    """
    n = e.n_atoms
    jm = _collective_lowering(n)
    jx = 0.5 * (jm + jm.T)
    lam, vec = np.linalg.eigh(jx)
    psi0 = np.zeros(n + 1)
    psi0[0] = 1.0  # k = 0 excitations
    return vec @ (np.exp(-0.5j * e.theta * lam**2) * (vec.conj().T @ psi0))


def brute_force_moments(e: EnsembleParams) -> Moments:
    """Correlators read off the literally constructed twisted state (N <= 14)."""
    n = e.n_atoms
    if n > 14:
        raise ParameterError(f"n_atoms: brute force supports N <= 14, got {n}")
    psi = twisted_state_symmetric(e)
    jm = _collective_lowering(n)
    jp = jm.T
    k = np.arange(n + 1)
    jz = np.diag(k - n / 2.0)

    def ev(op):
        return psi.conj() @ (op @ psi)

    sz = 2.0 * ev(jz).real / n
    # J+J- = sum_m s+(m)s-(m) + sum_{m != m'} s+(m)s-(m'); the diagonal part is N/2 + Jz
    spm = (ev(jp @ jm).real - (n / 2.0 + ev(jz).real)) / (n * (n - 1))
    smm = ev(jm @ jm) / (n * (n - 1))
    return Moments(sz=sz, spm=spm, smm=complex(smm))


def twisted_state_full(e: EnsembleParams) -> np.ndarray:
    """Expand the symmetric-sector state onto the full 2^N register.

    Qubit basis index bit = 0 means excited, bit = 1 means ground; a basis
    state with k excited qubits carries amplitude c_k / sqrt(C(N, k)).
    """
    n = e.n_atoms
    amps = twisted_state_symmetric(e)
    idx = np.arange(2**n, dtype=np.uint64)
    k_excited = n - np.bitwise_count(idx).astype(np.int64)
    norm = np.sqrt(comb(n, np.arange(n + 1)))
    return amps[k_excited] / norm[k_excited]


def reduced_two_qubit(e: EnsembleParams) -> np.ndarray:
    """Two-qubit reduced density matrix of the twisted state (qubits 1, 2)."""
    psi = twisted_state_full(e).reshape(4, -1)
    return psi @ psi.conj().T


@lru_cache(maxsize=16)
def _collective_ops_full(n: int):
    """Sparse full-register Jx, Jy, Jz for N qubits (excited = bit 0)."""
    from scipy import sparse

    sx = sparse.csr_matrix(np.array([[0, 1], [1, 0]], dtype=complex))
    sy = sparse.csr_matrix(np.array([[0, -1j], [1j, 0]], dtype=complex))
    sz = sparse.csr_matrix(np.array([[1, 0], [0, -1]], dtype=complex))
    eye = sparse.identity

    def collective(op):
        total = sparse.csr_matrix((2**n, 2**n), dtype=complex)
        for j in range(n):
            term = sparse.kron(eye(2**j, format="csr"), sparse.kron(op, eye(2 ** (n - j - 1), format="csr")))
            total = total + 0.5 * term
        return total.tocsr()

    return collective(sx), collective(sy), collective(sz)


def _trace_with(rho: np.ndarray, op) -> complex:
    # tr(rho op) accumulated over the sparse entries of op
    coo = op.tocoo()
    return complex(np.sum(coo.data * rho[coo.col, coo.row]))


def brute_force_xi(e: EnsembleParams, p_surv: float) -> SqueezingValue:
    """Literal phase-sensitivity minimisation on the damped N-qubit register.

    Applies the damping channel to every qubit of the twisted-state density
    operator, then minimises the perpendicular collective variance exactly via
    the smallest eigenvalue of the 2x2 covariance block.
    """
    n = e.n_atoms
    if n > 12:
        raise ParameterError(f"n_atoms: brute-force xi supports N <= 12, got {n}")
    psi = twisted_state_full(e)
    rho = np.outer(psi, psi.conj())
    rho = apply_product_raw(rho, kraus(p_surv))

    jx, jy, jz = _collective_ops_full(n)
    ops = (jx, jy, jz)
    mean = np.array([_trace_with(rho, op).real for op in ops])
    norm = float(np.linalg.norm(mean))
    if norm < 1e-12:
        raise SingularMeanSpinError("mean spin vanishes; squeezing parameter undefined")
    n_hat = mean / norm

    # orthonormal frame perpendicular to the mean spin
    trial = np.array([0.0, 0.0, 1.0]) if abs(n_hat[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    e1 = np.cross(n_hat, trial)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n_hat, e1)

    second = np.empty((3, 3), dtype=complex)
    for a in range(3):
        for b in range(a, 3):
            second[a, b] = _trace_with(rho, ops[a] @ ops[b])
            second[b, a] = second[a, b].conjugate()
    sym = 0.5 * (second + second.T).real  # <Ja Jb + Jb Ja>/2

    def cov(u, v):
        return u @ sym @ v - (u @ mean) * (v @ mean)

    g11, g22, g12 = cov(e1, e1), cov(e2, e2), cov(e1, e2)
    lam_min = 0.5 * (g11 + g22) - 0.5 * math.hypot(g11 - g22, 2.0 * g12)
    return SqueezingValue.from_xi2(n * lam_min / norm**2)
