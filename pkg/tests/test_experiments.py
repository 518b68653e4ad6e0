import numpy as np
import pytest

from drivenqubits import (
    analytic_threshold,
    border_map,
    find_gamma_c,
    find_gamma_m,
    gamma_m_vs_nbar,
    steady_negativity,
    steady_state,
    sweep_delta,
    sweep_gamma,
    negativity,
)
from drivenqubits.errors import BracketError, NonUnimodalError, ParameterError

# derived golden values, frozen after first verified computation
# (J=1.5, delta=0, nbar=0; golden-section tol 1e-4)
GOLDEN_GAMMA_M = 0.90574
GOLDEN_E_MAX = 0.0971293


@pytest.mark.parametrize("coupling", [1.0, 1.5, 2.0])
def test_threshold_matches_analytic_formula(base_params, coupling):
    p = base_params.replace(coupling_j=coupling)
    expected = analytic_threshold(1.0, coupling)
    got = find_gamma_c(p, (0.25 * expected, 2.0 * expected))
    assert abs(got - expected) / expected <= 0.02


def test_gamma_sweep_profile(base_params):
    grid = np.linspace(0.05, 4.0, 30)
    result = sweep_gamma(base_params, grid)
    gamma_c = analytic_threshold(1.0, 1.5)
    below = result.values[result.grid < gamma_c]
    assert np.all(below <= 1e-8)
    assert result.values[result.grid > 1.2 * gamma_c].min() > 0
    assert len(result.markers.gamma_c) == 1
    assert abs(result.markers.gamma_c[0] - gamma_c) / gamma_c < 0.02
    (gm, em), = result.markers.gamma_m
    assert gm == pytest.approx(GOLDEN_GAMMA_M, abs=5e-4)
    assert em == pytest.approx(GOLDEN_E_MAX, abs=1e-5)


def test_sweep_values_equal_pointwise_steady_evaluation(base_params):
    grid = np.array([0.2, 0.5, 1.0])
    result = sweep_gamma(base_params, grid)
    for g, v in zip(result.grid, result.values):
        direct = negativity(steady_state(base_params.replace(gamma=g)).rho_ss)
        assert v == direct  # pipeline must introduce no transformation


def test_sweeps_are_deterministic(base_params):
    grid = np.linspace(0.1, 2.0, 8)
    a = sweep_gamma(base_params, grid)
    b = sweep_gamma(base_params, grid)
    assert np.array_equal(a.values, b.values)


def test_gamma_sweep_rejects_nonpositive_grid(base_params):
    with pytest.raises(ParameterError):
        sweep_gamma(base_params, [-0.1, 0.5])
    with pytest.raises(ParameterError):
        sweep_gamma(base_params, [0.5, 0.5])


def test_finite_temperature_raises_threshold(base_params):
    gc_cold = find_gamma_c(base_params, (0.1, 0.6))
    gc_warm = find_gamma_c(base_params.replace(nbar=0.05), (0.1, 0.7))
    assert gc_warm > gc_cold > 1.0 / 3.0 - 0.01


def test_find_gamma_c_requires_straddling_bracket(base_params):
    with pytest.raises(BracketError):
        find_gamma_c(base_params, (0.05, 0.2))  # both below threshold


def test_find_gamma_m_golden_values(base_params):
    gm, em = find_gamma_m(base_params, (0.4, 3.0))
    assert gm == pytest.approx(GOLDEN_GAMMA_M, abs=5e-4)
    assert em == pytest.approx(GOLDEN_E_MAX, abs=1e-5)


def test_find_gamma_m_rejects_flat_bracket(base_params):
    with pytest.raises(NonUnimodalError):
        find_gamma_m(base_params, (0.05, 0.25))  # entirely below threshold


def test_delta_sweep_sub_threshold_entangles(base_params):
    p = base_params.replace(gamma=0.8 * analytic_threshold(1.0, 1.5))
    result = sweep_delta(p, np.linspace(0.0, 3.0, 25))
    assert result.values[0] <= 1e-8  # resonant and sub-threshold: separable
    assert result.values.max() > 1e-4
    k = int(np.argmax(result.values))
    assert 0 < k < len(result.grid) - 1
    assert len(result.markers.gamma_m) == 1  # unique interior optimum


def test_delta_sweep_supra_threshold_monotone_decrease(base_params):
    p = base_params.replace(gamma=0.8)
    result = sweep_delta(p, np.linspace(0.01, 2.0, 25))
    assert np.all(np.diff(result.values) < 0)


def test_border_map_matches_threshold_curve(base_params):
    j_grid = np.linspace(0.6, 2.5, 12)
    g_grid = np.linspace(0.05, 1.2, 16)
    bmap = border_map(base_params, ("J", j_grid), ("gamma", g_grid))
    cell = g_grid[1] - g_grid[0]
    for i, j_val in enumerate(j_grid):
        entangled = np.nonzero(bmap.entangled[i])[0]
        assert entangled.size > 0
        boundary = g_grid[entangled[0]]
        assert abs(boundary - analytic_threshold(1.0, j_val)) <= cell


def test_border_map_consistent_with_1d_sweep(base_params):
    g_grid = np.linspace(0.1, 1.5, 10)
    bmap = border_map(base_params, ("J", np.array([1.5])), ("gamma", g_grid))
    sweep = sweep_gamma(base_params, g_grid)
    assert np.array_equal(bmap.entangled[0], sweep.values > bmap.epsilon_border)


def test_border_map_rejects_unknown_axis(base_params):
    with pytest.raises(ParameterError):
        border_map(base_params, ("frequency", [1.0]), ("gamma", [0.5]))


def test_gamma_m_vs_nbar_directions(base_params):
    table = gamma_m_vs_nbar(base_params, [0.0, 0.02, 0.05], gamma_max=5.0)
    assert all(a > b for a, b in zip(table.e_max, table.e_max[1:]))  # peak shrinks
    assert table.fit_slope is not None
    assert table.fit_rel_rms_residual < 0.1  # tightly linear relation


def test_gamma_m_vs_nbar_single_point_degenerates(base_params):
    table = gamma_m_vs_nbar(base_params, [0.0], gamma_max=5.0)
    assert table.gamma_m[0] == pytest.approx(GOLDEN_GAMMA_M, abs=5e-4)
    assert table.fit_slope is None


def test_gamma_m_vs_nbar_requires_ascending_list(base_params):
    with pytest.raises(ParameterError):
        gamma_m_vs_nbar(base_params, [0.1, 0.05])


def test_steady_negativity_shortcut(base_params):
    direct = negativity(steady_state(base_params).rho_ss)
    assert steady_negativity(base_params) == direct
