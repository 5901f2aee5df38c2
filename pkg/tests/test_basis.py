import numpy as np
import pytest

from drivenwell import SystemParams, position_matrix, solve_h0
from drivenwell.basis import convergence_check

from oracles import grid_doublet_splitting, grid_spectrum

D4 = SystemParams(4.0, 0.0, 0.982)


@pytest.fixture(scope="module")
def spectrum_d4():
    return solve_h0(D4, basis_size=300, num_states=60)


class TestPotentialShape:
    def test_minima_at_sqrt_8d(self):
        params = SystemParams(4.0, 0.0, 1.0)
        x0 = params.well_position
        assert x0 == pytest.approx(np.sqrt(32.0))
        # stationary: dV/dx = -x/2 + x^3/(16 D) = 0
        assert -x0 / 2 + x0**3 / (16 * 4.0) == pytest.approx(0.0, abs=1e-14)

    def test_well_depth_is_barrier_height(self):
        for d_val in (1.0, 4.0, 8.0):
            params = SystemParams(d_val, 0.0, 1.0)
            assert params.potential(params.well_position) == pytest.approx(-d_val)
            assert params.potential(0.0) == 0.0


class TestSolveH0:
    def test_energies_ascending(self, spectrum_d4):
        assert np.all(np.diff(spectrum_d4.energies) > 0)

    def test_parity_alternates(self, spectrum_d4):
        assert np.array_equal(spectrum_d4.parities,
                              (-1) ** np.arange(60))

    def test_doublet_count_below_barrier(self, spectrum_d4):
        # D plays the role of the number of doublets below the barrier top,
        # approximately: allow D or D+1 complete pairs
        e = spectrum_d4.energies
        n_pairs = int(np.sum(e < 0)) // 2
        assert 4 <= n_pairs <= 5

    def test_ground_splitting_against_grid_oracle(self, spectrum_d4):
        split_lib = spectrum_d4.energies[1] - spectrum_d4.energies[0]
        split_oracle = grid_doublet_splitting(D4, n_points=2001)
        assert split_lib == pytest.approx(split_oracle, rel=1e-6)

    def test_low_energies_against_grid_oracle(self, spectrum_d4):
        vals, _, _, _ = grid_spectrum(D4, n_points=3001, n_states=6)
        assert spectrum_d4.energies[:6] == pytest.approx(vals, abs=5e-8)

    def test_convergence_under_basis_growth(self):
        assert convergence_check(D4, basis_size=300, num_states=60) < 1e-10

    def test_preconditions(self):
        with pytest.raises(ValueError):
            solve_h0(D4, basis_size=100, num_states=60)   # basis < 2K
        with pytest.raises(ValueError):
            solve_h0(D4, basis_size=300, num_states=6)    # K < 2 ceil(D)


class TestPositionMatrix:
    def test_parity_selection_rule_exact(self, spectrum_d4):
        x = position_matrix(spectrum_d4)
        same = np.equal.outer(spectrum_d4.parities, spectrum_d4.parities)
        assert np.all(x[same] == 0.0)

    def test_symmetric(self, spectrum_d4):
        x = position_matrix(spectrum_d4)
        assert np.max(np.abs(x - x.T)) < 1e-12

    def test_ground_doublet_element_near_well_position(self, spectrum_d4):
        x = position_matrix(spectrum_d4)
        assert abs(x[0, 1]) == pytest.approx(D4.well_position, rel=0.05)

    def test_ground_doublet_element_against_grid_wavefunctions(self, spectrum_d4):
        _, psis, xg, dx = grid_spectrum(D4, n_points=3001, n_states=2)
        x01_oracle = float(np.sum(psis[0] * xg * psis[1]) * dx)
        x = position_matrix(spectrum_d4)
        assert abs(x[0, 1]) == pytest.approx(abs(x01_oracle), rel=1e-4)

    def test_completeness_at_truncation(self, spectrum_d4):
        defect = spectrum_d4.completeness_defect()
        assert np.all(defect[:30] < 1e-6)

    def test_returns_copy(self, spectrum_d4):
        x = position_matrix(spectrum_d4)
        x[0, 1] = 123.0
        assert spectrum_d4.x_elements[0, 1] != 123.0


class TestParams:
    def test_force_amplitude_consistency(self):
        params = SystemParams(4.0, 0.015029, 0.982)
        assert params.drive_force == pytest.approx(0.015029 * np.sqrt(32.0))
        back = SystemParams.from_force(4.0, params.drive_force, 0.982)
        assert back.drive_amplitude == pytest.approx(0.015029)

    def test_validation(self):
        with pytest.raises(ValueError):
            SystemParams(-1.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            SystemParams(4.0, -0.1, 1.0)
        with pytest.raises(ValueError):
            SystemParams(4.0, 0.1, 0.0)
