"""Time propagation of the density matrix.

Two of the three mutually checking routes live here:

* ``evolve`` -- adaptive Dormand-Prince 5(4) integration of the vectorized
  generator, with step diagnostics;
* ``propagate_exponential`` -- superoperator matrix exponential.

The third route, the symbolically expanded two-qubit scalar ODE system, is
in :mod:`drivenqubits.elementwise`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .errors import ParameterError, StiffnessError
from .linalg import DensityMatrix
from .model import Liouvillian, SystemParams, build_liouvillian, unvec, vec
from .numerics import DEFAULT, NumericalSettings

# Dormand-Prince 5(4) tableau
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_DP_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_DP_B4 = np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)

_MIN_STEP = 1e-12


@dataclass(frozen=True)
class StepDiagnostics:
    accepted: int
    rejected: int
    max_local_error: float  # largest accepted scaled error estimate


@dataclass(frozen=True)
class InitialState:
    """Initial two-qubit state cos(theta)|dd> + sin(theta)|uu>, or an
    explicit DensityMatrix override for arbitrary mixed states."""

    theta: float | None = None
    matrix: DensityMatrix | None = None

    def __post_init__(self):
        if (self.theta is None) == (self.matrix is None):
            raise ParameterError("specify exactly one of theta or matrix")
        if self.theta is not None and not (0.0 <= self.theta <= np.pi / 2 + 1e-12):
            raise ParameterError(f"theta must lie in [0, pi/2], got {self.theta}")

    def density_matrix(self, n_qubits: int = 2) -> DensityMatrix:
        if self.matrix is not None:
            return self.matrix
        if n_qubits != 2:
            raise ParameterError("theta parameterization is defined for two qubits")
        psi = np.zeros(4, dtype=complex)
        psi[0] = np.sin(self.theta)  # |uu>
        psi[3] = np.cos(self.theta)  # |dd>
        return DensityMatrix.from_state_vector(psi)


def ground_state(n_qubits: int = 2) -> DensityMatrix:
    """All qubits in |down>."""
    psi = np.zeros(2**n_qubits, dtype=complex)
    psi[-1] = 1.0
    return DensityMatrix.from_state_vector(psi)


@dataclass(frozen=True)
class Trajectory:
    """Uniform-grid samples of the evolving state."""

    times: np.ndarray
    states: tuple[DensityMatrix, ...]
    diagnostics: StepDiagnostics = field(compare=False, default=StepDiagnostics(0, 0, 0.0))

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        if len(t) != len(self.states):
            raise ParameterError("times and states length mismatch")
        if len(t) > 1 and np.any(np.diff(t) <= 0):
            raise ParameterError("times must be strictly increasing")
        object.__setattr__(self, "times", t)
        t.setflags(write=False)

    def __len__(self) -> int:
        return len(self.states)


def _rk45_on_grid(rhs, y0, t_grid, rtol, atol):
    """Integrate dy/dt = rhs(y), landing exactly on each grid time."""
    y = np.array(y0, dtype=complex)
    out = [y.copy()]
    accepted = rejected = 0
    max_err = 0.0
    k = [None] * 7
    k[0] = rhs(y)
    t = float(t_grid[0])
    # initial step from the first derivative scale
    scale = atol + rtol * np.abs(y)
    d0 = np.sqrt(np.mean(np.abs(y / scale) ** 2))
    d1 = np.sqrt(np.mean(np.abs(k[0] / scale) ** 2))
    h = 0.01 * d0 / d1 if d1 > 1e-14 else 1e-3

    for t_target in t_grid[1:]:
        while t < t_target - 1e-14 * max(1.0, abs(t_target)):
            h = min(h, t_target - t)
            if h < _MIN_STEP:
                raise StiffnessError(f"step size underflow at t = {t:.6g}", time=t)
            for s in range(1, 7):
                ys = y + h * sum(a * k[j] for j, a in enumerate(_DP_A[s]))
                k[s] = rhs(ys)
            y5 = y + h * sum(b * k[j] for j, b in enumerate(_DP_B5) if b != 0.0)
            y4 = y + h * sum(b * k[j] for j, b in enumerate(_DP_B4) if b != 0.0)
            scale = atol + rtol * np.maximum(np.abs(y), np.abs(y5))
            err = np.sqrt(np.mean(np.abs((y5 - y4) / scale) ** 2))
            if err <= 1.0:
                t += h
                y = y5
                k[0] = k[6]  # FSAL
                accepted += 1
                max_err = max(max_err, err)
            else:
                rejected += 1
            factor = 0.9 * (1.0 / err) ** 0.2 if err > 1e-14 else 5.0
            h *= min(5.0, max(0.2, factor))
        out.append(y.copy())
    return out, StepDiagnostics(accepted, rejected, max_err)


def default_steady_horizon(p: SystemParams) -> float:
    """Integration horizon long enough to reach the steady state: the
    slower of 40 relaxation times and 200 drive periods."""
    gmin = float(np.min(p.gamma))
    t_relax = 40.0 / gmin if gmin > 0 else 0.0
    return max(t_relax, 200.0)


def evolve(
    p: SystemParams,
    rho0,
    t_end: float,
    sample_count: int = 200,
    settings: NumericalSettings = DEFAULT,
) -> Trajectory:
    """Propagate rho0 to t_end, sampling on a uniform time grid.

    rho0 may be an InitialState, a DensityMatrix, or a raw matrix.
    """
    if t_end <= 0:
        raise ParameterError(f"t_end must be positive, got {t_end}")
    if sample_count < 2:
        raise ParameterError(f"sample_count must be >= 2, got {sample_count}")
    if isinstance(rho0, InitialState):
        rho0 = rho0.density_matrix(p.n_qubits)
    elif not isinstance(rho0, DensityMatrix):
        rho0 = DensityMatrix(rho0, (2,) * p.n_qubits, settings)
    if rho0.dim != p.dim:
        raise ParameterError("initial state dimension does not match parameters")

    lmat = build_liouvillian(p).matrix
    t_grid = np.linspace(0.0, float(t_end), int(sample_count))
    ys, diag = _rk45_on_grid(lambda y: lmat @ y, vec(rho0.entries), t_grid, settings.rtol, settings.atol)
    states = tuple(
        DensityMatrix(_hermitized(unvec(y)), (2,) * p.n_qubits, settings) for y in ys
    )
    return Trajectory(t_grid, states, diag)


def _hermitized(m: np.ndarray) -> np.ndarray:
    """Project out anti-Hermitian roundoff drift; reject real asymmetry."""
    drift = np.max(np.abs(m - m.conj().T))
    if drift > 1e-8:
        raise ParameterError(f"propagated state lost hermiticity: {drift:.3e}")
    return (m + m.conj().T) / 2.0


def propagate_exponential(L: Liouvillian, rho0: DensityMatrix, t: float) -> DensityMatrix:
    """Exact propagation vec(rho(t)) = expm(L t) vec(rho0)."""
    if t < 0:
        raise ParameterError(f"t must be nonnegative, got {t}")
    if L.dim != rho0.dim**2:
        raise ParameterError("Liouvillian and state dimensions do not match")
    v = expm(L.matrix * t) @ vec(rho0.entries)
    m = unvec(v)
    m = (m + m.conj().T) / 2.0  # scrub roundoff asymmetry
    return DensityMatrix(m, rho0.local_dims, rho0.settings)
