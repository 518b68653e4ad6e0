import numpy as np
import pytest

from drivenqubits import (
    SystemParams,
    analytic_threshold,
    apply_generator,
    evolve,
    ground_state,
    negativity,
    steady_state,
)
from drivenqubits.errors import DegenerateSteadyStateError, ParameterError


def test_undriven_system_decays_to_ground_state():
    p = SystemParams(n_qubits=2, omega=0.0, delta=0.0, coupling_j=1.5, gamma=0.7, nbar=0.0)
    res = steady_state(p)
    assert np.max(np.abs(res.rho_ss.entries - np.diag([0, 0, 0, 1.0]))) < 1e-10
    assert res.residual <= 1e-9


def test_steady_state_matches_long_time_dynamics(base_params):
    p = base_params.replace(gamma=1.0)
    rho_ss = steady_state(p).rho_ss.entries
    endpoint = evolve(p, ground_state(), 200.0, 3).states[-1].entries
    assert np.linalg.norm(rho_ss - endpoint) < 1e-6


def test_strong_noise_empties_the_qubits(base_params):
    res = steady_state(base_params.replace(gamma=50.0))
    assert abs(res.rho_ss.entries[3, 3].real - 1.0) < 0.01
    assert negativity(res.rho_ss) < 1e-3


def test_generator_vanishes_at_steady_state():
    for gamma, nbar, delta in [(0.5, 0.0, 0.0), (1.2, 0.2, 0.4), (0.8, 0.05, 0.0)]:
        p = SystemParams(n_qubits=2, omega=1.0, delta=delta, coupling_j=1.5,
                         gamma=gamma, nbar=nbar)
        res = steady_state(p)
        assert np.linalg.norm(apply_generator(p, res.rho_ss)) <= 1e-9


def test_uniqueness_gap_reported(base_params):
    res = steady_state(base_params)
    assert res.uniqueness_gap > 1e-8


def test_degenerate_null_space_raises(base_params):
    # no dissipation: every Hamiltonian eigenprojector is stationary
    with pytest.raises(DegenerateSteadyStateError) as err:
        steady_state(base_params.replace(omega=0.0, gamma=0.0))
    assert err.value.uniqueness_gap <= 1e-8


def test_below_threshold_separable_above_entangled(base_params):
    gamma_c = analytic_threshold(1.0, 1.5)
    for gamma in (0.3 * gamma_c, 0.9 * gamma_c):
        assert negativity(steady_state(base_params.replace(gamma=gamma)).rho_ss) < 1e-8
    for gamma in np.linspace(1.5 * gamma_c, 10 * gamma_c, 4):
        assert negativity(steady_state(base_params.replace(gamma=gamma)).rho_ss) > 0


class TestAnalyticThreshold:
    def test_reference_coupling(self):
        assert analytic_threshold(1.0, 1.5) == pytest.approx(1.0 / 3.0)

    def test_direct_substitution(self):
        assert analytic_threshold(1.0, 0.5) == pytest.approx(1.0)

    def test_rejects_nonpositive_coupling(self):
        with pytest.raises(ParameterError):
            analytic_threshold(1.0, 0.0)
