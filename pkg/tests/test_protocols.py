import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.lib.protocols.csign import (
    branch_density_matrix,
    branch_overlap,
    csign_evolve,
    csign_phases,
    csign_trace,
    negativity_two_qubit,
    partial_transpose,
    two_qubit_log_negativity,
)
from src.lib.protocols.gaussian import (
    gaussian_evolve,
    gaussian_init,
    gaussian_trajectory,
    log_negativity_gaussian,
    log_negativity_series,
    max_log_negativity,
    oscillator_threshold_scan,
    oscillator_trace,
    symplectic_eigenvalues,
    two_mode_squeezed_vacuum,
)
from src.lib.protocols.trace_export import trace_csv
from src.lib.quantities.constants import get_constants
from src.lib.rates.entanglement import entanglement_rate
from src.models.experiment_model import RateMode
from src.models.protocol_model import BranchState, GaussianTwoMode
from src.utils.error_utils import ConfigurationError, DomainError, NumericalError, StateError

M, D = 3.375e-18, 3e-7
PERIOD = 2 * math.pi


def dephased_negativity(delta_phi: float, coherence: float) -> float:
    return max(0.0, (coherence**2 + 2 * coherence * abs(math.sin(delta_phi)) - 1) / 4)


class TestCsignPhases:
    def test_start_at_zero(self):
        assert csign_phases(M, D, 1e-7, 0.0) == (0.0, 0.0, 0.0)

    def test_no_delocalization_no_phase_difference(self):
        assert csign_phases(M, D, 0.0, 10.0)[2] == 0.0

    def test_difference_matches_branch_phases(self):
        phi0, phi1, delta_phi = csign_phases(M, D, D / 2, 3.0)
        assert delta_phi == pytest.approx(abs(phi1 - phi0), rel=1e-9)

    def test_difference_grows_at_exact_rate(self):
        rate = entanglement_rate(M, D, 1e-8, RateMode.EXACT)
        t, dt = 5.0, 1e-3
        slope = (csign_phases(M, D, 1e-8, t + dt)[2] - csign_phases(M, D, 1e-8, t)[2]) / dt
        assert slope == pytest.approx(rate, rel=1e-9)

    def test_rejects_negative_time(self):
        with pytest.raises(DomainError):
            csign_phases(M, D, 1e-8, -1.0)


class TestBranchState:
    def test_overlap_limits(self):
        assert branch_overlap(0.0) == 2.0
        assert branch_overlap(math.pi / 2) == pytest.approx(0.0, abs=1e-12)
        assert branch_overlap(0.3) == pytest.approx(branch_overlap(0.3 + math.pi))

    def test_maximal_entanglement_at_quarter_turn(self):
        t = (math.pi / 2) / entanglement_rate(M, D, 1e-7, RateMode.EXACT)
        state = csign_evolve(M, D, 1e-7, 0.0, t)
        assert negativity_two_qubit(state) == pytest.approx(0.5, rel=1e-9)
        assert two_qubit_log_negativity(0.5) == pytest.approx(1.0)

    def test_initial_state_is_separable(self):
        assert negativity_two_qubit(csign_evolve(M, D, 1e-7, 1.0, 0.0)) == 0.0

    def test_strong_decoherence_kills_coherences(self):
        state = csign_evolve(M, D, 1e-7, 1.0, 50.0)
        off_diagonal = state.rho - np.diag(np.diag(state.rho))
        assert np.max(np.abs(off_diagonal)) < 1e-8
        assert negativity_two_qubit(state) == 0.0

    def test_bell_and_product_states(self):
        bell = np.zeros((4, 4))
        bell[0, 0] = bell[0, 3] = bell[3, 0] = bell[3, 3] = 0.5
        assert negativity_two_qubit(bell) == pytest.approx(0.5)
        product = np.zeros((4, 4))
        product[0, 0] = 1.0
        assert negativity_two_qubit(product) == 0.0

    def test_partial_transpose_swaps_second_index(self):
        rho = np.arange(16.0).reshape(4, 4)
        transposed = partial_transpose(rho)
        # <a b| rho^T2 |a' b'> = <a b'| rho |a' b>
        assert transposed[0, 1] == rho[1, 0]
        assert transposed[0, 3] == rho[1, 2]
        assert transposed[2, 2] == rho[2, 2]

    @given(delta_phi=st.floats(0.0, 2 * math.pi), coherence=st.floats(0.0, 1.0))
    def test_negativity_matches_closed_form(self, delta_phi, coherence):
        rho = branch_density_matrix(delta_phi, coherence)
        expected = dephased_negativity(delta_phi, coherence)
        assert negativity_two_qubit(rho) == pytest.approx(expected, abs=1e-12)

    @given(delta_phi=st.floats(0.0, 10.0), coherence=st.floats(0.0, 1.0))
    def test_branch_state_is_a_density_matrix(self, delta_phi, coherence):
        rho = branch_density_matrix(delta_phi, coherence)
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
        assert np.linalg.eigvalsh(rho).min() > -1e-12

    @given(delta_phi=st.floats(0.0, 3.0), coherence=st.floats(0.5, 1.0))
    def test_negativity_has_period_pi(self, delta_phi, coherence):
        first = negativity_two_qubit(branch_density_matrix(delta_phi, coherence))
        shifted = negativity_two_qubit(branch_density_matrix(delta_phi + math.pi, coherence))
        assert first == pytest.approx(shifted, abs=1e-12)

    def test_rejects_non_density_matrix(self):
        with pytest.raises(StateError):
            negativity_two_qubit(np.eye(4))
        with pytest.raises(StateError):
            BranchState(rho=np.diag([1.5, -0.5, 0.0, 0.0]))


class TestCsignTrace:
    def test_fast_decoherence_never_entangles(self):
        gamma_ent = entanglement_rate(M, D, 1e-7)
        times = np.linspace(0.0, 3 / gamma_ent, 200)
        trace = csign_trace(M, D, 1e-7, 10 * gamma_ent, times)
        assert trace.measure.max() < 1e-3

    def test_onset_follows_phase_accumulation(self):
        delta_x = D / 100
        rate = entanglement_rate(M, D, delta_x, RateMode.EXACT)
        times = np.linspace(0.0, 0.1 / rate, 2001)
        trace = csign_trace(M, D, delta_x, 0.0, times)
        predicted = math.asin(0.02) / rate
        assert trace.onset(0.01) == pytest.approx(predicted, rel=0.2)

    def test_log_negativity_column(self):
        times = np.linspace(0.0, 1.0, 5)
        trace = csign_trace(M, D, 1e-7, 0.0, times)
        np.testing.assert_allclose(trace.log_negativity, np.log2(2 * trace.measure + 1))

    def test_trace_csv_layout(self):
        trace = csign_trace(M, D, 1e-7, 0.0, np.linspace(0.0, 1.0, 3))
        lines = trace_csv(trace).split("\r\n")
        assert lines[0] == "t_s,delta_phi_rad,negativity,E_N"
        assert len([line for line in lines if line]) == 4


class TestGaussianState:
    def test_vacuum(self):
        np.testing.assert_allclose(gaussian_init(0.0, 1.0).cov, np.eye(4) / 2)

    def test_squeezed_thermal_variance(self):
        state = gaussian_init(0.5, 10.0)
        assert state.cov[0, 0] == pytest.approx(200 * 0.5)
        assert state.cov[1, 1] == pytest.approx(0.5 * 2 / 100)

    @given(nbar=st.floats(0.0, 5.0), eta=st.floats(1.0, 1e2))
    def test_symplectic_eigenvalues_fixed_by_occupation(self, nbar, eta):
        values = symplectic_eigenvalues(gaussian_init(nbar, eta).cov)
        np.testing.assert_allclose(values, [(2 * nbar + 1) / 2] * 2, rtol=1e-9)

    @pytest.mark.parametrize("nbar, eta", [(-0.1, 1.0), (0.5, 0.5)])
    def test_rejects_bad_parameters(self, nbar, eta):
        with pytest.raises(DomainError):
            gaussian_init(nbar, eta)

    def test_rejects_unphysical_covariance(self):
        with pytest.raises(StateError):
            GaussianTwoMode(cov=np.eye(4) * 0.1)

    def test_product_state_not_entangled(self):
        assert log_negativity_gaussian(gaussian_init(0.0, 3.0)) == pytest.approx(0.0, abs=1e-9)

    def test_two_mode_squeezed_vacuum(self):
        r = 0.5
        assert log_negativity_gaussian(two_mode_squeezed_vacuum(r)) == pytest.approx(2 * r / math.log(2), rel=1e-9)


class TestGaussianEvolution:
    def test_free_evolution_returns_after_one_period(self):
        state = gaussian_init(0.5, 3.0)
        after = gaussian_evolve(state, 1.0, 0.0, 0.0, 0.0, PERIOD / 100, 100)
        np.testing.assert_allclose(after.cov, state.cov, rtol=1e-8, atol=1e-12)
        assert after.t == pytest.approx(PERIOD)

    def test_coupling_without_damping_is_symplectic(self):
        state = gaussian_init(0.5, 3.0)
        after = gaussian_evolve(state, 1.0, 0.3, 0.0, 0.0, PERIOD / 100, 100)
        np.testing.assert_allclose(symplectic_eigenvalues(after.cov), [1.0, 1.0], rtol=1e-8)

    def test_damping_relaxes_to_thermal_occupation(self):
        k = get_constants()
        temperature = 2.0 * k.hbar / k.k_B
        after = gaussian_evolve(gaussian_init(0.0, 2.0), 1.0, 0.0, 0.5, temperature, 0.1, 1000)
        np.testing.assert_allclose(after.cov, 2.5 * np.eye(4), rtol=1e-6, atol=1e-9)

    def test_step_length_limit(self):
        with pytest.raises(ConfigurationError):
            gaussian_evolve(gaussian_init(0.0, 1.0), 1.0, 0.1, 0.0, 0.0, 0.2, 10)

    def test_weak_coupling_entanglement(self):
        covs = gaussian_trajectory(gaussian_init(0.0, 1.0), 1.0, 0.05, 0.0, 0.0, PERIOD / 100, 100)
        assert log_negativity_series(covs).max() == pytest.approx(0.072, rel=0.5)

    def test_max_over_periods(self):
        assert max_log_negativity(1.0, 0.0, 1.0, 0.0) == pytest.approx(0.0, abs=1e-9)
        assert max_log_negativity(1.0, 0.0, 1.0, 0.05) > 0.03

    def test_trace_without_coupling(self):
        trace = oscillator_trace(gaussian_init(0.5, 1.0), 1.0, 0.0, 0.0, 0.0, np.linspace(0, 20, 11))
        assert trace.onset() is None
        assert trace.measure_name == "E_N"
        lines = trace_csv(trace).split("\r\n")
        assert lines[1].split(",")[2] == ""


class TestThresholdScan:
    def test_ground_state_entangles_at_tiny_coupling(self):
        g_star = oscillator_threshold_scan(1.0, 0.0, 1.0, (1e-9, 0.99), rel_tol=1e-2)
        assert g_star < 1e-3

    def test_thermal_threshold_near_half(self):
        g_star = oscillator_threshold_scan(1.0, 0.5, 1.0, (1e-3, 0.99), rel_tol=1e-2)
        assert 0.25 < g_star < 1.0

    def test_threshold_grows_with_occupation(self):
        thresholds = [
            oscillator_threshold_scan(1.0, nbar, 1.0, (1e-3, 0.99), rel_tol=1e-2)
            for nbar in (0.1, 0.5, 1.0)
        ]
        assert thresholds == sorted(thresholds)

    def test_bad_bracket(self):
        with pytest.raises(NumericalError):
            oscillator_threshold_scan(1.0, 0.5, 1.0, (1e-3, 1e-2))
        with pytest.raises(ConfigurationError):
            oscillator_threshold_scan(1.0, 0.5, 1.0, (0.5, 0.1))
