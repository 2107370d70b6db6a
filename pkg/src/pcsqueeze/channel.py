"""Amplitude-damping channel parameterized by the survival population p = |q(t)|^2.

Basis order is fixed package-wide: index 0 = excited, index 1 = ground. All the
non-Markovianity lives in the time dependence of p; the channel itself only sees
the instantaneous survival probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class KrausPair:
    """The two Kraus matrices of the damping map, e1†e1 + e2†e2 = 1."""

    e1: np.ndarray
    e2: np.ndarray
    p_surv: float


@dataclass(frozen=True)
class DensityMatrix:
    """Validated density operator on a register of qubits (dim = 2**m)."""

    entries: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.entries, dtype=complex)
        object.__setattr__(self, "entries", rho)
        n = rho.shape[0]
        if rho.ndim != 2 or rho.shape[1] != n or n < 2 or (n & (n - 1)) != 0:
            raise ParameterError(f"density matrix must be square with power-of-2 dim, got {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
            raise ParameterError("density matrix not Hermitian within 1e-12")
        if abs(np.trace(rho) - 1.0) > 1e-12:
            raise ParameterError(f"density matrix trace {np.trace(rho)!r} not 1 within 1e-12")
        if np.linalg.eigvalsh(rho)[0] < -1e-10:
            raise ParameterError("density matrix has an eigenvalue below -1e-10")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1


def kraus(p_surv: float) -> KrausPair:
    """Kraus pair for survival population p: e1 = diag(sqrt(p), 1), e2 lower-left sqrt(1-p)."""
    if not (0.0 <= p_surv <= 1.0) or not math.isfinite(p_surv):
        raise ParameterError(f"p_surv: must lie in [0, 1], got {p_surv!r}")
    e1 = np.array([[math.sqrt(p_surv), 0.0], [0.0, 1.0]], dtype=complex)
    e2 = np.array([[0.0, 0.0], [math.sqrt(1.0 - p_surv), 0.0]], dtype=complex)
    return KrausPair(e1=e1, e2=e2, p_surv=p_surv)


def apply(rho: DensityMatrix, k: KrausPair) -> DensityMatrix:
    """Single-qubit map rho -> e1 rho e1† + e2 rho e2†."""
    if rho.dim != 2:
        raise ParameterError(f"apply expects a single-qubit state, got dim {rho.dim}")
    out = k.e1 @ rho.entries @ k.e1.conj().T + k.e2 @ rho.entries @ k.e2.conj().T
    return DensityMatrix(out)


def apply_product_raw(rho: np.ndarray, k: KrausPair) -> np.ndarray:
    """Apply the single-qubit map independently to every qubit of a raw 2^m x 2^m array.

    Sequential per-qubit application; mathematically identical to summing all
    2^m Kraus strings but linear instead of exponential in the string count.
    """
    n = rho.shape[0]
    m = n.bit_length() - 1
    out = np.asarray(rho, dtype=complex)
    for j in range(m):
        left = 2**j
        right = 2 ** (m - j - 1)
        work = out.reshape(left, 2, right, left, 2, right)
        out = (
            np.einsum("ab,LbRlcr,dc->LaRldr", k.e1, work, k.e1.conj(), optimize=True)
            + np.einsum("ab,LbRlcr,dc->LaRldr", k.e2, work, k.e2.conj(), optimize=True)
        ).reshape(n, n)
    return out


def apply_product(rho: DensityMatrix, k: KrausPair) -> DensityMatrix:
    """Apply the map to every tensor factor of an m-qubit state (m <= 12)."""
    if rho.n_qubits > 12:
        raise ParameterError(f"apply_product supports at most 12 qubits, got {rho.n_qubits}")
    return DensityMatrix(apply_product_raw(rho.entries, k))
