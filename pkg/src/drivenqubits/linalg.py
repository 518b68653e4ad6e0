"""Complex dense linear algebra and quantum-state primitives.

Conventions
-----------
Basis ordering for N qubits is the product basis with the excited state
|up> first, i.e. for two qubits {|uu>, |ud>, |du>, |dd>}.  sigma_z is
diag(+1, -1) and the raising operator is sigma_plus = |up><down|.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalError, ParameterError
from .numerics import DEFAULT, NumericalSettings

# single-qubit operators in the fixed basis (|up> first)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class DensityMatrix:
    """Validated d x d density matrix over a register of qubits.

    Parameters
    ----------
    entries : (d, d) complex ndarray
        Matrix elements in the fixed product basis.
    local_dims : tuple of int
        Subsystem dimensions; all 2 for this package, product equals d.
    """

    entries: np.ndarray
    local_dims: tuple[int, ...]
    settings: NumericalSettings = field(default=DEFAULT, compare=False)

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        object.__setattr__(self, "entries", m)
        object.__setattr__(self, "local_dims", tuple(int(d) for d in self.local_dims))
        d = int(np.prod(self.local_dims))
        if m.shape != (d, d):
            raise ParameterError(
                f"entries shape {m.shape} incompatible with local_dims {self.local_dims}"
            )
        s = self.settings
        herm = np.max(np.abs(m - m.conj().T))
        if herm > s.hermiticity_tol:
            raise ParameterError(f"not Hermitian: max |m - m^dag| = {herm:.3e}")
        tr = np.trace(m)
        if abs(tr - 1.0) > s.trace_tol:
            raise ParameterError(f"trace {tr} deviates from 1 beyond {s.trace_tol}")
        lam_min = float(np.linalg.eigvalsh((m + m.conj().T) / 2.0)[0])
        if lam_min < -s.positivity_tol:
            raise ParameterError(f"not positive semidefinite: min eigenvalue {lam_min:.3e}")
        m.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def n_qubits(self) -> int:
        return len(self.local_dims)

    @classmethod
    def from_state_vector(cls, psi, settings: NumericalSettings = DEFAULT) -> "DensityMatrix":
        """Build |psi><psi| from a normalized pure-state vector."""
        psi = np.asarray(psi, dtype=complex).reshape(-1)
        n = int(np.log2(psi.size))
        if 2**n != psi.size:
            raise ParameterError(f"state vector length {psi.size} is not a power of 2")
        # normalize the projector by its trace |psi|^2 rather than the vector
        # by |psi|; dividing by the squared norm avoids the sqrt roundoff
        rho = np.outer(psi, psi.conj())
        return cls(rho / np.trace(rho).real, (2,) * n, settings)

    def copy_entries(self) -> np.ndarray:
        return np.array(self.entries, dtype=complex)


def _as_matrix(rho) -> tuple[np.ndarray, tuple[int, ...]]:
    if isinstance(rho, DensityMatrix):
        return rho.entries, rho.local_dims
    m = np.asarray(rho, dtype=complex)
    n = int(np.log2(m.shape[0]))
    if m.shape[0] != m.shape[1] or 2**n != m.shape[0]:
        raise ParameterError(f"matrix shape {m.shape} is not a square power of 2")
    return m, (2,) * n


def _normalize_subsystems(subsystem, n: int) -> list[int]:
    if np.isscalar(subsystem):
        subsystem = [subsystem]
    subs = sorted({int(i) for i in subsystem})
    for i in subs:
        if i < 0 or i >= n:
            raise ParameterError(f"subsystem index {i} out of range for {n} qubits")
    return subs


def partial_transpose(rho, subsystem) -> np.ndarray:
    """Transpose the given subsystem indices of a multi-qubit state.

    Returns a plain ndarray (the partial transpose of an entangled state
    need not be positive, so it is not a DensityMatrix).
    """
    m, dims = _as_matrix(rho)
    n = len(dims)
    subs = _normalize_subsystems(subsystem, n)
    t = m.reshape(dims + dims)
    for i in subs:
        t = np.swapaxes(t, i, n + i)
    return t.reshape(m.shape)


def partial_trace(rho, keep, settings: NumericalSettings = DEFAULT) -> DensityMatrix:
    """Reduced density matrix over the kept subsystems."""
    m, dims = _as_matrix(rho)
    n = len(dims)
    keep = _normalize_subsystems(keep, n)
    if not keep:
        raise ParameterError("keep set must be non-empty")
    traced = [i for i in range(n) if i not in keep]
    t = m.reshape(dims + dims)
    # contract row/column axes of each traced subsystem, highest first so
    # remaining axis numbers stay valid
    for i in sorted(traced, reverse=True):
        t = np.trace(t, axis1=i, axis2=t.ndim // 2 + i)
    d_keep = int(np.prod([dims[i] for i in keep]))
    reduced = t.reshape(d_keep, d_keep)
    return DensityMatrix(reduced, tuple(dims[i] for i in keep), settings)


def hermitian_eigenvalues(m, settings: NumericalSettings = DEFAULT) -> np.ndarray:
    """Ascending real spectrum of a Hermitian matrix.

    The input is symmetrized as (m + m^dag)/2 before decomposition to
    suppress roundoff drift; inputs non-Hermitian beyond tolerance are
    rejected.
    """
    m = np.asarray(m, dtype=complex)
    dev = np.max(np.abs(m - m.conj().T))
    if dev > settings.eig_hermiticity_tol:
        raise NumericalError(f"matrix is not Hermitian: max |m - m^dag| = {dev:.3e}")
    return np.linalg.eigvalsh((m + m.conj().T) / 2.0)


def trace_norm(m, settings: NumericalSettings = DEFAULT) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix.

    Computed as the sum of singular values, which equals the sum of
    absolute eigenvalues for Hermitian input and loses less precision
    than an eigendecomposition for exactly representable spectra.
    """
    m = np.asarray(m, dtype=complex)
    dev = np.max(np.abs(m - m.conj().T))
    if dev > settings.eig_hermiticity_tol:
        raise NumericalError(f"matrix is not Hermitian: max |m - m^dag| = {dev:.3e}")
    return float(np.sum(np.linalg.svd((m + m.conj().T) / 2.0, compute_uv=False)))
