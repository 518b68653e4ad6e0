"""Figure-level pipelines: parameter sweeps, threshold and optimum
locators, entangled/separable border maps, and the optimum-vs-temperature
relation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BracketError, DegenerateSteadyStateError, NonUnimodalError, ParameterError
from .entanglement import negativity
from .model import SystemParams
from .numerics import DEFAULT, NumericalSettings
from .steady import steady_state

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

_AXIS_NAMES = ("gamma", "J", "delta", "nbar")


def _with_axis(base: SystemParams, name: str, value: float) -> SystemParams:
    if name == "gamma":
        return base.replace(gamma=value)
    if name == "J":
        return base.replace(coupling_j=value)
    if name == "delta":
        return base.replace(delta=value)
    if name == "nbar":
        return base.replace(nbar=value)
    raise ParameterError(f"unknown axis {name!r}; expected one of {_AXIS_NAMES}")


def steady_negativity(p: SystemParams, settings: NumericalSettings = DEFAULT) -> float:
    """Negativity of the unique steady state at p."""
    return negativity(steady_state(p, settings).rho_ss, (0,), settings)


@dataclass(frozen=True)
class SweepMarkers:
    gamma_c: tuple[float, ...] = ()  # threshold crossings of the sweep axis
    gamma_m: tuple[tuple[float, float], ...] = ()  # (position, peak value)
    tolerance: float = 0.0


@dataclass(frozen=True)
class SweepResult:
    swept_parameter: str  # e.g. "gamma[Omega]"
    grid: np.ndarray
    values: np.ndarray
    markers: SweepMarkers = field(default_factory=SweepMarkers)
    failed_points: tuple[int, ...] = ()  # grid indices with solver failures

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if g.ndim != 1 or np.any(np.diff(g) <= 0):
            raise ParameterError("grid must be strictly ascending")
        if v.shape != g.shape:
            raise ParameterError("values shape must match grid")
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)
        g.setflags(write=False)
        v.setflags(write=False)


@dataclass(frozen=True)
class BorderMap:
    axis1: str
    axis2: str
    grid1: np.ndarray
    grid2: np.ndarray
    entangled: np.ndarray  # bool, shape (len(grid1), len(grid2))
    epsilon_border: float
    failed_cells: tuple[tuple[int, int], ...] = ()


def _sweep(base, axis, grid, settings, locate_markers):
    grid = np.asarray(grid, dtype=float)
    values = np.full(grid.shape, np.nan)
    failed = []
    for k, x in enumerate(grid):
        try:
            values[k] = steady_negativity(_with_axis(base, axis, x), settings)
        except DegenerateSteadyStateError:
            failed.append(k)
    markers = SweepMarkers()
    if locate_markers and not failed:
        markers = _locate_markers(base, axis, grid, values, settings)
    unit = "Omega" if axis in ("gamma", "J", "delta") else "1"
    return SweepResult(f"{axis}[{unit}]", grid, values, markers, tuple(failed))


def _locate_markers(base, axis, grid, values, settings, tol=1e-4):
    eps = settings.negativity_eps
    crossings = []
    for k in range(len(grid) - 1):
        if (values[k] >= eps) != (values[k + 1] >= eps):
            f = lambda x: steady_negativity(_with_axis(base, axis, x), settings) - eps
            crossings.append(_bisect(f, grid[k], grid[k + 1], tol))
    maxima = []
    for k in range(1, len(grid) - 1):
        if values[k] > values[k - 1] and values[k] >= values[k + 1] and values[k] > eps:
            f = lambda x: steady_negativity(_with_axis(base, axis, x), settings)
            xm, fm = _golden_max(f, grid[k - 1], grid[k + 1], tol)
            maxima.append((xm, fm))
    return SweepMarkers(tuple(crossings), tuple(maxima), tol)


def _bisect(f, lo, hi, tol):
    f_lo = f(lo)
    if (f_lo > 0) == (f(hi) > 0):
        raise BracketError(f"bracket ({lo}, {hi}) does not straddle a crossing")
    while hi - lo > tol:
        mid = (lo + hi) / 2.0
        if (f(mid) > 0) == (f_lo > 0):
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def _golden_max(f, lo, hi, tol):
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
    xm = (a + b) / 2.0
    return xm, f(xm)


def sweep_gamma(base: SystemParams, grid, settings: NumericalSettings = DEFAULT) -> SweepResult:
    """Steady-state negativity across a grid of decay rates."""
    grid = np.asarray(grid, dtype=float)
    if np.any(grid <= 0):
        raise ParameterError("gamma grid must be positive")
    return _sweep(base, "gamma", grid, settings, locate_markers=True)


def sweep_delta(base: SystemParams, grid, settings: NumericalSettings = DEFAULT) -> SweepResult:
    """Steady-state negativity across a grid of detunings."""
    return _sweep(base, "delta", grid, settings, locate_markers=True)


def find_gamma_c(
    base: SystemParams,
    bracket: tuple[float, float],
    tol: float = 1e-4,
    settings: NumericalSettings = DEFAULT,
) -> float:
    """Bisect the decay rate at which steady-state negativity first
    exceeds the separability epsilon."""
    lo, hi = bracket
    eps = settings.negativity_eps
    e_lo = steady_negativity(base.replace(gamma=lo), settings)
    e_hi = steady_negativity(base.replace(gamma=hi), settings)
    if not (e_lo < eps <= e_hi):
        raise BracketError(
            f"negativity {e_lo:.3e} at gamma={lo} and {e_hi:.3e} at gamma={hi} "
            "do not straddle the threshold"
        )
    return _bisect(lambda g: steady_negativity(base.replace(gamma=g), settings) - eps, lo, hi, tol)


def find_gamma_m(
    base: SystemParams,
    bracket: tuple[float, float],
    tol: float = 1e-4,
    settings: NumericalSettings = DEFAULT,
    coarse_points: int = 64,
) -> tuple[float, float]:
    """Golden-section maximization of steady-state negativity over gamma.

    A coarse scan first verifies the profile is unimodal on the bracket.
    """
    lo, hi = bracket
    xs = np.linspace(lo, hi, coarse_points)
    vals = np.array([steady_negativity(base.replace(gamma=x), settings) for x in xs])
    peaks = [
        k
        for k in range(1, coarse_points - 1)
        if vals[k] > vals[k - 1] and vals[k] >= vals[k + 1] and vals[k] > settings.negativity_eps
    ]
    if len(peaks) != 1:
        raise NonUnimodalError(
            f"coarse scan found {len(peaks)} interior maxima on ({lo}, {hi})",
            maxima=[(float(xs[k]), float(vals[k])) for k in peaks],
        )
    k = peaks[0]
    return _golden_max(
        lambda g: steady_negativity(base.replace(gamma=g), settings), xs[k - 1], xs[k + 1], tol
    )


def border_map(
    base: SystemParams,
    axis1: tuple[str, object],
    axis2: tuple[str, object],
    epsilon_border: float = None,
    settings: NumericalSettings = DEFAULT,
) -> BorderMap:
    """Entangled/separable classification of the steady state over a
    two-parameter grid."""
    name1, grid1 = axis1
    name2, grid2 = axis2
    for name in (name1, name2):
        if name not in _AXIS_NAMES:
            raise ParameterError(f"unknown axis {name!r}; expected one of {_AXIS_NAMES}")
    eps = settings.negativity_eps if epsilon_border is None else float(epsilon_border)
    grid1 = np.asarray(grid1, dtype=float)
    grid2 = np.asarray(grid2, dtype=float)
    entangled = np.zeros((grid1.size, grid2.size), dtype=bool)
    failed = []
    for i, x1 in enumerate(grid1):
        for j, x2 in enumerate(grid2):
            p = _with_axis(_with_axis(base, name1, x1), name2, x2)
            try:
                entangled[i, j] = steady_negativity(p, settings) > eps
            except DegenerateSteadyStateError:
                failed.append((i, j))
    return BorderMap(name1, name2, grid1, grid2, entangled, eps, tuple(failed))


@dataclass(frozen=True)
class OptimumTable:
    """Per-temperature optimum and the low-temperature linear relation
    between peak negativity and its location."""

    nbar: tuple[float, ...]
    gamma_m: tuple[float, ...]
    e_max: tuple[float, ...]
    fit_slope: float | None = None
    fit_intercept: float | None = None
    fit_rel_rms_residual: float | None = None
    fit_nbar_cutoff: float = 0.05


def gamma_m_vs_nbar(
    base: SystemParams,
    nbar_list,
    gamma_max: float = 20.0,
    tol: float = 1e-4,
    settings: NumericalSettings = DEFAULT,
    fit_nbar_cutoff: float = 0.05,
) -> OptimumTable:
    """Optimal decay rate and peak negativity per bath occupation, plus a
    least-squares line through the low-occupation points."""
    nbars = [float(x) for x in nbar_list]
    if len(nbars) < 1 or any(b > a for a, b in zip(nbars[1:], nbars)):
        raise ParameterError("nbar_list must be non-empty and ascending")
    gms, ems = [], []
    for nb in nbars:
        gm, em = find_gamma_m(base.replace(nbar=nb), (1e-3, gamma_max), tol, settings)
        gms.append(gm)
        ems.append(em)
    slope = intercept = residual = None
    idx = [k for k, nb in enumerate(nbars) if nb <= fit_nbar_cutoff]
    if len(idx) >= 2:
        x = np.array([gms[k] for k in idx])
        y = np.array([ems[k] for k in idx])
        slope, intercept = np.polyfit(x, y, 1)
        res = y - (slope * x + intercept)
        residual = float(np.sqrt(np.mean(res**2)) / np.sqrt(np.mean(y**2)))
        slope, intercept = float(slope), float(intercept)
    return OptimumTable(
        tuple(nbars), tuple(gms), tuple(ems), slope, intercept, residual, fit_nbar_cutoff
    )
