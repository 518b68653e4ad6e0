"""Negativity and entanglement sudden death / birth detection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .linalg import (
    DensityMatrix,
    partial_trace,
    partial_transpose,
    trace_norm,
)
from .model import SystemParams, build_liouvillian
from .numerics import DEFAULT, NumericalSettings


def negativity(rho, subsystem=(0,), settings: NumericalSettings = DEFAULT) -> float:
    """Entanglement negativity (||rho^T_A||_1 - 1)/2, in [0, 1/2].

    For more than two qubits pass a two-qubit reduced state (see
    partial_trace) or an explicit bipartition over one qubit.
    """
    if isinstance(rho, DensityMatrix) and rho.n_qubits != 2:
        raise ParameterError(
            "negativity is defined for two-qubit states; reduce with partial_trace first"
        )
    pt = partial_transpose(rho, subsystem)
    value = (trace_norm(pt, settings) - 1.0) / 2.0
    # roundoff can leave a PPT state marginally above zero; snap it down
    return 0.0 if value < settings.negativity_floor else float(value)


def pairwise_negativity(rho: DensityMatrix, pair=(0, 1), settings: NumericalSettings = DEFAULT) -> float:
    """Negativity of the reduced state of one qubit pair."""
    reduced = partial_trace(rho, pair, settings)
    return negativity(reduced, (0,), settings)


def presentation_scale(value: float, doubled: bool = False) -> float:
    """Optional x2 display normalization; never used in thresholds."""
    return 2.0 * value if doubled else value


@dataclass(frozen=True)
class EntanglementEvent:
    kind: str  # "death" or "birth"
    time: float
    negativity_before: float
    negativity_after: float

    def __post_init__(self):
        if self.kind not in ("death", "birth"):
            raise ParameterError(f"unknown event kind {self.kind!r}")


def _refine_crossing(p, rho_left, t_left, t_right, epsilon, resolution, settings):
    """Bisect the crossing time of (negativity - epsilon) by propagating
    the left-bracket state with the matrix exponential."""
    from .dynamics import propagate_exponential

    liou = build_liouvillian(p)
    lo, hi = 0.0, t_right - t_left
    while hi - lo > resolution:
        mid = (lo + hi) / 2.0
        e_mid = negativity(propagate_exponential(liou, rho_left, mid), (0,), settings)
        left_sign = negativity(rho_left, (0,), settings) >= epsilon
        if (e_mid >= epsilon) == left_sign:
            lo = mid
        else:
            hi = mid
    return t_left + (lo + hi) / 2.0


def detect_events(
    traj,
    epsilon: float = None,
    params: SystemParams = None,
    settings: NumericalSettings = DEFAULT,
) -> list[EntanglementEvent]:
    """Locate entanglement deaths and births along a trajectory.

    Crossings of (negativity - epsilon) between grid samples are refined by
    bisection on exponentially propagated states when params is given;
    otherwise the crossing time is linearly interpolated.
    """
    if len(traj) < 2:
        raise ParameterError("trajectory needs at least 2 samples")
    eps = settings.negativity_eps if epsilon is None else float(epsilon)
    if eps <= 0:
        raise ParameterError(f"epsilon must be positive, got {eps}")

    values = [negativity(s, (0,), settings) for s in traj.states]
    events = []
    for k in range(len(values) - 1):
        above_l, above_r = values[k] >= eps, values[k + 1] >= eps
        if above_l == above_r:
            continue
        t_l, t_r = traj.times[k], traj.times[k + 1]
        if params is not None:
            t_event = _refine_crossing(
                params, traj.states[k], t_l, t_r, eps, settings.event_time_resolution, settings
            )
        else:
            frac = (eps - values[k]) / (values[k + 1] - values[k])
            t_event = t_l + frac * (t_r - t_l)
        kind = "death" if above_l else "birth"
        events.append(EntanglementEvent(kind, float(t_event), values[k], values[k + 1]))
    return events
