"""Entanglement dynamics of driven, coupled, dissipative spin qubits."""

from .dynamics import (
    InitialState,
    Trajectory,
    default_steady_horizon,
    evolve,
    ground_state,
    propagate_exponential,
)
from .elementwise import evolve_elementwise_n2
from .entanglement import EntanglementEvent, detect_events, negativity, pairwise_negativity
from .experiments import (
    BorderMap,
    OptimumTable,
    SweepResult,
    border_map,
    find_gamma_c,
    find_gamma_m,
    gamma_m_vs_nbar,
    steady_negativity,
    sweep_delta,
    sweep_gamma,
)
from .linalg import (
    DensityMatrix,
    hermitian_eigenvalues,
    partial_trace,
    partial_transpose,
    trace_norm,
)
from .model import (
    Liouvillian,
    SystemParams,
    apply_generator,
    build_effective_hamiltonian,
    build_liouvillian,
    thermal_occupation,
)
from .numerics import NumericalSettings
from .steady import SteadyStateResult, analytic_threshold, steady_state

__all__ = [
    "BorderMap",
    "DensityMatrix",
    "EntanglementEvent",
    "InitialState",
    "Liouvillian",
    "NumericalSettings",
    "OptimumTable",
    "SteadyStateResult",
    "SweepResult",
    "SystemParams",
    "Trajectory",
    "analytic_threshold",
    "apply_generator",
    "border_map",
    "build_effective_hamiltonian",
    "build_liouvillian",
    "default_steady_horizon",
    "detect_events",
    "evolve",
    "evolve_elementwise_n2",
    "find_gamma_c",
    "find_gamma_m",
    "gamma_m_vs_nbar",
    "ground_state",
    "hermitian_eigenvalues",
    "negativity",
    "pairwise_negativity",
    "partial_trace",
    "partial_transpose",
    "propagate_exponential",
    "steady_negativity",
    "steady_state",
    "sweep_delta",
    "sweep_gamma",
    "thermal_occupation",
    "trace_norm",
]

__version__ = "0.1.0"
