"""Steady states as the null space of the Liouvillian."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSteadyStateError, ParameterError
from .linalg import DensityMatrix
from .model import SystemParams, apply_generator, build_liouvillian, unvec
from .numerics import DEFAULT, NumericalSettings


@dataclass(frozen=True)
class SteadyStateResult:
    rho_ss: DensityMatrix
    residual: float  # Frobenius norm of drho/dt at the solution
    uniqueness_gap: float  # second-smallest singular value of the Liouvillian


def steady_state(p: SystemParams, settings: NumericalSettings = DEFAULT) -> SteadyStateResult:
    """Unique steady state via the smallest singular vector of L.

    The null vector is Hermitized and trace-normalized before the residual
    is recomputed.  A second small singular value signals a degenerate
    null space and raises instead of silently averaging.
    """
    lmat = build_liouvillian(p).matrix
    _, svals, vh = np.linalg.svd(lmat)
    gap = float(svals[-2])
    if gap <= settings.uniqueness_gap_tol:
        raise DegenerateSteadyStateError(
            f"Liouvillian null space is degenerate (gap {gap:.3e})", uniqueness_gap=gap
        )
    rho = unvec(vh[-1].conj())
    rho = (rho + rho.conj().T) / 2.0
    tr = np.trace(rho).real
    if abs(tr) < 1e-12:
        raise DegenerateSteadyStateError(
            "null vector is traceless; no normalizable steady state", uniqueness_gap=gap
        )
    rho /= tr
    residual = float(np.linalg.norm(apply_generator(p, rho)))
    rho_ss = DensityMatrix(rho, (2,) * p.n_qubits, settings)
    return SteadyStateResult(rho_ss, residual, gap)


def analytic_threshold(omega: float, coupling_j: float) -> float:
    """Zero-temperature resonant noise threshold Omega^2 / (2 J)."""
    if coupling_j <= 0:
        raise ParameterError(f"coupling_j must be positive, got {coupling_j}")
    return omega**2 / (2.0 * coupling_j)
