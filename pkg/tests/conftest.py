import numpy as np
import pytest

from drivenqubits import SystemParams


@pytest.fixture
def base_params():
    """Resonant two-qubit system in the typical operating regime."""
    return SystemParams(n_qubits=2, omega=1.0, delta=0.0, coupling_j=1.5, gamma=0.5, nbar=0.0)


def random_density(n_qubits, rng):
    """Full-rank random density matrix (Wishart-style)."""
    d = 2**n_qubits
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_unitary(d, rng):
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))
