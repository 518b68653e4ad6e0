"""Centralized numerical tolerances.

Every hard-coded tolerance in the package lives here so that callers can
tighten or relax the whole stack coherently by passing a single record.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class NumericalSettings:
    """Tolerance bundle used by state validation, solvers and classifiers."""

    # density-matrix validity
    hermiticity_tol: float = 1e-10
    trace_tol: float = 1e-8
    positivity_tol: float = 1e-7  # min eigenvalue >= -positivity_tol

    # eigen-decomposition input check
    eig_hermiticity_tol: float = 1e-9

    # adaptive integrator defaults
    rtol: float = 1e-8
    atol: float = 1e-10

    # steady-state solver
    steady_residual_tol: float = 1e-9
    uniqueness_gap_tol: float = 1e-8

    # entangled/separable classification and event detection
    negativity_eps: float = 1e-6
    negativity_floor: float = 1e-10  # PT eigenvalues above -floor count as roundoff
    event_time_resolution: float = 1e-3


DEFAULT = NumericalSettings()
