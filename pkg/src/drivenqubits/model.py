"""Effective Hamiltonian and Lindblad generator for a driven qubit chain.

The model is an open chain of N driven spin-1/2 qubits with nearest-neighbor
sigma_z (x) sigma_z coupling, each connected to its own thermal bath:

    H_eff = sum_i delta_i/2 sigma_z^i - J sum_i sigma_z^i sigma_z^{i+1}
            + sum_i Omega_i sigma_x^i
            - i sum_i Gamma_i (nbar+1) sigma_+^i sigma_-^i
            - i sum_i Gamma_i nbar sigma_-^i sigma_+^i

    drho/dt = -i H_eff rho + i rho H_eff^dag
              + sum_i 2 Gamma_i (nbar+1) sigma_-^i rho sigma_+^i
              + sum_i 2 Gamma_i nbar sigma_+^i rho sigma_-^i

All rates and frequencies are in units of a reference Rabi frequency, so
typical inputs look like J=1.5, Gamma=0.8 with Omega=1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import constants

from .errors import CapacityError, ParameterError
from .linalg import (
    IDENTITY_2,
    SIGMA_MINUS,
    SIGMA_PLUS,
    SIGMA_X,
    SIGMA_Z,
    DensityMatrix,
)

# dense d^2 x d^2 superoperators become unwieldy past 5 qubits (1024x1024)
MAX_QUBITS_DENSE = 5


def _as_rate_array(value, n: int, name: str, nonnegative: bool = False) -> np.ndarray:
    arr = np.broadcast_to(np.asarray(value, dtype=float), (n,)).copy()
    if not np.all(np.isfinite(arr)):
        raise ParameterError(f"{name} must be finite, got {arr}")
    if nonnegative and np.any(arr < 0):
        raise ParameterError(f"{name} must be nonnegative, got {arr}")
    return arr


@dataclass(frozen=True)
class SystemParams:
    """Physical parameters of the driven dissipative qubit chain.

    Scalars for omega/delta/gamma broadcast to all qubits; per-qubit
    sequences are accepted as well.
    """

    n_qubits: int = 2
    omega: object = 1.0
    delta: object = 0.0
    coupling_j: float = 1.5
    gamma: object = 0.5
    nbar: float = 0.0

    def __post_init__(self):
        n = int(self.n_qubits)
        if n < 1:
            raise ParameterError(f"n_qubits must be >= 1, got {n}")
        object.__setattr__(self, "n_qubits", n)
        object.__setattr__(self, "omega", _as_rate_array(self.omega, n, "omega"))
        object.__setattr__(self, "delta", _as_rate_array(self.delta, n, "delta"))
        object.__setattr__(
            self, "gamma", _as_rate_array(self.gamma, n, "gamma", nonnegative=True)
        )
        j = float(self.coupling_j)
        if not np.isfinite(j):
            raise ParameterError(f"coupling_j must be finite, got {j}")
        object.__setattr__(self, "coupling_j", j)
        nb = float(self.nbar)
        if not np.isfinite(nb) or nb < 0:
            raise ParameterError(f"nbar must be finite and >= 0, got {nb}")
        object.__setattr__(self, "nbar", nb)
        for arr in (self.omega, self.delta, self.gamma):
            arr.setflags(write=False)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def replace(self, **kwargs) -> "SystemParams":
        fields = {
            "n_qubits": self.n_qubits,
            "omega": self.omega,
            "delta": self.delta,
            "coupling_j": self.coupling_j,
            "gamma": self.gamma,
            "nbar": self.nbar,
        }
        fields.update(kwargs)
        return SystemParams(**fields)


@dataclass(frozen=True)
class Liouvillian:
    """Dense superoperator acting on column-stacked vec(rho)."""

    matrix: np.ndarray
    dim: int  # d^2

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (self.dim, self.dim):
            raise ParameterError(f"Liouvillian shape {m.shape} != ({self.dim}, {self.dim})")
        object.__setattr__(self, "matrix", m)
        m.setflags(write=False)


def vec(rho: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(rho, dtype=complex).reshape(-1, order="F")


def unvec(v: np.ndarray) -> np.ndarray:
    d = int(round(np.sqrt(v.size)))
    return np.asarray(v, dtype=complex).reshape(d, d, order="F")


def embed(op: np.ndarray, site: int, n_qubits: int) -> np.ndarray:
    """Single-qubit operator acting on one site of the register."""
    if site < 0 or site >= n_qubits:
        raise ParameterError(f"site {site} out of range for {n_qubits} qubits")
    out = np.array([[1.0 + 0j]])
    for k in range(n_qubits):
        out = np.kron(out, op if k == site else IDENTITY_2)
    return out


def build_effective_hamiltonian(p: SystemParams) -> np.ndarray:
    """Non-Hermitian effective Hamiltonian; Hermitian part is the closed-
    system Hamiltonian, anti-Hermitian part carries the decay rates."""
    n, d = p.n_qubits, p.dim
    h = np.zeros((d, d), dtype=complex)
    for i in range(n):
        sz = embed(SIGMA_Z, i, n)
        sp = embed(SIGMA_PLUS, i, n)
        sm = embed(SIGMA_MINUS, i, n)
        h += p.delta[i] / 2.0 * sz
        h += p.omega[i] * embed(SIGMA_X, i, n)
        h += -1j * p.gamma[i] * (p.nbar + 1.0) * (sp @ sm)
        h += -1j * p.gamma[i] * p.nbar * (sm @ sp)
    for i in range(n - 1):
        h -= p.coupling_j * (embed(SIGMA_Z, i, n) @ embed(SIGMA_Z, i + 1, n))
    return h


def apply_generator(p: SystemParams, rho) -> np.ndarray:
    """Right-hand side drho/dt of the master equation."""
    m = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if m.shape != (p.dim, p.dim):
        raise ParameterError(f"rho shape {m.shape} incompatible with {p.n_qubits} qubits")
    h = build_effective_hamiltonian(p)
    out = -1j * (h @ m) + 1j * (m @ h.conj().T)
    for i in range(p.n_qubits):
        sp = embed(SIGMA_PLUS, i, p.n_qubits)
        sm = embed(SIGMA_MINUS, i, p.n_qubits)
        out += 2.0 * p.gamma[i] * (p.nbar + 1.0) * (sm @ m @ sp)
        out += 2.0 * p.gamma[i] * p.nbar * (sp @ m @ sm)
    return out


def build_liouvillian(p: SystemParams) -> Liouvillian:
    """Dense superoperator L with L vec(rho) = vec(drho/dt).

    Uses column stacking, so A rho B maps to (B^T kron A) vec(rho).
    """
    if p.n_qubits > MAX_QUBITS_DENSE:
        raise CapacityError(
            f"dense Liouvillian capped at {MAX_QUBITS_DENSE} qubits, got {p.n_qubits}"
        )
    d = p.dim
    eye = np.eye(d, dtype=complex)
    h = build_effective_hamiltonian(p)
    lmat = -1j * np.kron(eye, h) + 1j * np.kron(h.conj(), eye)
    for i in range(p.n_qubits):
        sp = embed(SIGMA_PLUS, i, p.n_qubits)
        sm = embed(SIGMA_MINUS, i, p.n_qubits)
        lmat += 2.0 * p.gamma[i] * (p.nbar + 1.0) * np.kron(sp.T, sm)
        lmat += 2.0 * p.gamma[i] * p.nbar * np.kron(sm.T, sp)
    return Liouvillian(lmat, d * d)


def thermal_occupation(temperature: float, angular_frequency: float) -> float:
    """Bose-Einstein mean occupation 1/(exp(hbar w / kB T) - 1).

    temperature in kelvin, angular_frequency in rad/s.
    """
    if temperature <= 0:
        raise ParameterError(f"temperature must be positive, got {temperature}")
    if angular_frequency <= 0:
        raise ParameterError(f"angular_frequency must be positive, got {angular_frequency}")
    x = constants.hbar * angular_frequency / (constants.k * temperature)
    if x > 700.0:  # expm1 would overflow; occupation is exp(-x) to this precision
        return float(np.exp(-x))
    return float(1.0 / np.expm1(x))
