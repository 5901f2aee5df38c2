import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drivenwell import BathParams, SystemParams, solve_h0
from drivenwell.dissipation import (
    XCoefficients, assemble_periodic_generator,
    assemble_rwa_kernel, asymptotic_state, bath_weight, decoherence_time,
    localized_triple, propagate, purity, relaxation_time,
    restrict_to_three_levels, x_fourier_coefficients,
)
from drivenwell.floquet import solve_spectrum
from drivenwell.threestate import ThreeStateParams, eigensystem, \
    tunneling_probabilities

D4 = SystemParams(4.0, 0.0, 0.982)
OMEGA = 0.982


@pytest.fixture(scope="module")
def h0():
    return solve_h0(D4, basis_size=300, num_states=60)


@pytest.fixture(scope="module")
def undriven(h0):
    spec = solve_spectrum(h0, D4, 16).lowest(12)
    return spec, x_fourier_coefficients(spec.states, h0.x_elements)


@pytest.fixture(scope="module")
def driven(h0):
    spec = solve_spectrum(h0, D4.replace_amplitude(0.0145), 16).lowest(10)
    return spec, x_fourier_coefficients(spec.states, h0.x_elements)


class TestBathWeight:
    def test_zero_limit(self):
        bath = BathParams(2e-6, 3e-3)
        assert bath_weight(0.0, bath) == pytest.approx(2e-6 * 3e-3, rel=1e-12)
        assert bath_weight(1e-12, bath) == pytest.approx(2e-6 * 3e-3, rel=1e-6)

    def test_decays_exponentially_above_temperature(self):
        bath = BathParams(1e-6, 1e-2)
        assert bath_weight(1.0, bath) < 1e-40
        assert bath_weight(50.0, bath) == 0.0

    @given(st.floats(1e-4, 5.0), st.floats(1e-3, 1.0))
    @settings(max_examples=100)
    def test_kms_ratio(self, eps, kt):
        bath = BathParams(1e-6, kt)
        n_down, n_up = bath_weight(-eps, bath), bath_weight(eps, bath)
        if n_up > 0:
            assert n_down / n_up == pytest.approx(np.exp(eps / kt), rel=1e-10)

    def test_zero_temperature(self):
        bath = BathParams(1e-6, 0.0)
        assert bath_weight(0.5, bath) == 0.0
        assert bath_weight(0.0, bath) == 0.0
        assert bath_weight(-0.5, bath) == pytest.approx(0.5e-6)

    def test_vectorized(self):
        bath = BathParams(1e-6, 1e-2)
        eps = np.array([-1.0, -1e-12, 0.0, 1e-3, 2.0])
        vals = bath_weight(eps, bath)
        assert vals.shape == eps.shape
        assert np.all(vals[:-1] > 0)


class TestXCoefficients:
    def test_undriven_single_shift_equals_x_element(self, h0, undriven):
        spec, x = undriven
        # each pair carries exactly one nonzero shift, n = n_a - n_b of the
        # housing sidebands, with the bare x element as its value
        homes = []
        for s in spec.states:
            n_idx, k_idx = np.nonzero(s.components)
            homes.append((int(n_idx[0]) - 16, int(k_idx[0])))
        for a in range(x.size):
            for b in range(x.size):
                col = x.values[a, b, :]
                nz = np.nonzero(np.abs(col) > 1e-15)[0]
                n_a, k_a = homes[a]
                n_b, k_b = homes[b]
                if h0.x_elements[k_a, k_b] == 0.0:
                    assert nz.size == 0
                else:
                    assert nz.size == 1
                    assert x.shifts[nz[0]] == n_a - n_b
                    assert col[nz[0]].real == pytest.approx(
                        h0.x_elements[k_a, k_b], abs=1e-14)
                    # pairs housed in the same sideband sit at shift zero
                    if n_a == n_b:
                        assert x.shifts[nz[0]] == 0

    def test_symmetry_identity_exact(self, driven):
        _, x = driven
        mirrored = np.conj(x.values[:, :, ::-1].transpose(1, 0, 2))
        assert np.array_equal(x.values, mirrored)

    def test_parity_selection_exact(self, driven):
        _, x = driven
        p = x.parities
        for i, n in enumerate(x.shifts):
            allowed = ((-1.0) ** abs(n)) * np.outer(p, p) == -1
            assert np.max(np.abs(x.values[:, :, i][~allowed])) == 0.0

    def test_tail_weight_negligible(self, driven):
        _, x = driven
        assert x.tail_weight() < 1e-10

    def test_truncation_mismatch_rejected(self, h0):
        a = solve_spectrum(h0, D4, 16).states[0]
        b = solve_spectrum(h0, D4, 12).states[0]
        with pytest.raises(ValueError, match="mismatched"):
            x_fourier_coefficients([a, b], h0.x_elements)

    def test_position_matrix_hermitian_in_time(self, driven):
        _, x = driven
        for t in (0.0, 0.3, 1.7):
            xt = x.at_time(t)
            assert np.max(np.abs(xt - xt.conj().T)) < 1e-12


class TestKernel:
    def test_diagonal_rates_match_direct_formula(self, driven):
        _, x = driven
        bath = BathParams(1e-6, 1e-4)
        kernel = assemble_rwa_kernel(x, bath)
        # L[a,a,c,c] = 2 sum_n N(eps_a - eps_c + n w) |X[a,c,n]|^2
        for a in (0, 2, 5):
            for c in (1, 3, 4):
                if a == c:
                    continue
                expect = 0.0
                for i, n in enumerate(x.shifts):
                    arg = x.quasienergies[a] - x.quasienergies[c] + n * OMEGA
                    expect += 2.0 * bath_weight(arg, bath) \
                        * abs(x.values[a, c, i]) ** 2
                assert kernel.tensor[a, a, c, c].real == pytest.approx(
                    expect, rel=1e-12, abs=1e-300)

    def test_detailed_balance_undriven(self, undriven):
        _, x = undriven
        for kt in (1e-4, 1e-2):
            kernel = assemble_rwa_kernel(x, BathParams(1e-6, kt))
            rates = kernel.direct_rates()
            e_mean = x.mean_energies
            for a in range(x.size):
                for b in range(a):
                    if rates[a, b] <= 0 or rates[b, a] <= 0:
                        continue
                    log_ratio = np.log(rates[a, b] / rates[b, a])
                    assert log_ratio == pytest.approx(
                        -(e_mean[a] - e_mean[b]) / kt, rel=1e-6)

    def test_zero_temperature_kills_upward_rates(self, undriven):
        _, x = undriven
        kernel = assemble_rwa_kernel(x, BathParams(1e-6, 0.0))
        rates = kernel.direct_rates()
        e_mean = x.mean_energies
        up = np.subtract.outer(e_mean, e_mean) > 0     # a above b
        assert np.max(np.abs(rates[up])) == 0.0

    def test_trace_preservation_identity(self, driven):
        _, x = driven
        kernel = assemble_rwa_kernel(x, BathParams(1e-6, 1e-3))
        col_sums = np.einsum("aacd->cd", kernel.tensor)
        assert np.max(np.abs(col_sums)) < 1e-9 * np.max(np.abs(kernel.tensor))

    def test_hermiticity_preservation(self, driven):
        _, x = driven
        kernel = assemble_rwa_kernel(x, BathParams(1e-6, 1e-3))
        rng = np.random.default_rng(7)
        h = rng.standard_normal((x.size, x.size)) \
            + 1j * rng.standard_normal((x.size, x.size))
        h = h + h.conj().T
        out = kernel.apply(h)
        assert np.max(np.abs(out - out.conj().T)) < 1e-15

    def test_gamma_linearity(self, driven):
        _, x = driven
        k1 = assemble_rwa_kernel(x, BathParams(1e-6, 1e-3))
        k2 = assemble_rwa_kernel(x, BathParams(2e-6, 1e-3))
        assert np.array_equal(k2.tensor, 2.0 * k1.tensor)

    def test_parity_block_structure(self, driven):
        _, x = driven
        kernel = assemble_rwa_kernel(x, BathParams(1e-6, 1e-3))
        op_parity = np.outer(x.parities, x.parities)
        t = kernel.tensor
        mixes = op_parity[:, :, None, None] != op_parity[None, None, :, :]
        assert np.max(np.abs(t[mixes])) == 0.0

    def test_crude_variant_keeps_secular_terms_only(self, driven):
        _, x = driven
        full = assemble_rwa_kernel(x, BathParams(1e-6, 1e-3))
        crude = assemble_rwa_kernel(x, BathParams(1e-6, 1e-3), crude=True)
        m = x.size
        for a in range(m):
            for b in range(m):
                assert crude.tensor[a, b, a, b] == full.tensor[a, b, a, b]
                assert crude.tensor[a, a, b, b] == full.tensor[a, a, b, b]
        # everything else vanishes
        mask = np.zeros((m, m, m, m), dtype=bool)
        idx = np.arange(m)
        a, b = np.meshgrid(idx, idx, indexing="ij")
        mask[a, b, a, b] = True
        mask[a, a, b, b] = True
        assert np.max(np.abs(crude.tensor[~mask])) == 0.0


class TestPeriodicGenerator:
    def test_period_average_reproduces_kernel(self, driven):
        _, x = driven
        bath = BathParams(1e-6, 1e-3)
        kernel = assemble_rwa_kernel(x, bath)
        gen = assemble_periodic_generator(x, bath)
        diff = np.max(np.abs(gen.period_average() - kernel.superoperator()))
        assert diff < 1e-12

    def test_periodicity(self, driven):
        _, x = driven
        gen = assemble_periodic_generator(x, BathParams(1e-6, 1e-3))
        period = 2 * np.pi / OMEGA
        for t in (0.0, 0.37, 2.9):
            a = gen.superoperator_at(t)
            b = gen.superoperator_at(t + period)
            assert np.max(np.abs(a - b)) < 1e-12

    def test_zero_damping_leaves_coherent_part(self, driven):
        _, x = driven
        gen = assemble_periodic_generator(x, BathParams(0.0, 1e-3))
        eps = x.quasienergies
        m = x.size
        coherent = -1j * (np.kron(np.diag(eps), np.eye(m))
                          - np.kron(np.eye(m), np.diag(eps)))
        assert np.max(np.abs(gen.superoperator_at(0.55) - coherent)) == 0.0


def _coherent_triple_x(delta, detuning, coupling):
    """Synthetic three-state X container with no dissipative coupling; the
    quasienergies follow the closed-form crossing model."""
    p = ThreeStateParams(0.0, delta, detuning, coupling)
    eps0, eps1, eps2, beta = eigensystem(p)
    values = np.zeros((3, 3, 9), dtype=complex)
    return XCoefficients(values=values,
                         quasienergies=np.array([eps0, eps1, eps2]),
                         parities=np.array([1, -1, -1]),
                         mean_energies=np.array([-3.5, -1.5, -1.4]),
                         omega=1.0, n_sidebands=2), p, beta


class TestPropagation:
    def test_coherent_evolution_reproduces_three_state_formula(self):
        x, p, beta = _coherent_triple_x(1e-4, 3e-4, 5e-4)
        kernel = assemble_rwa_kernel(x, BathParams(1e-6, 1e-4))
        a_right = np.array([1.0, np.cos(beta), np.sin(beta)]) / np.sqrt(2)
        a_left = np.array([1.0, -np.cos(beta), -np.sin(beta)]) / np.sqrt(2)
        a_chaos = np.array([0.0, -np.sin(beta), np.cos(beta)])
        sigma0 = np.outer(a_right, a_right).astype(complex)
        _, e1, e2, _ = eigensystem(p)
        t_beat = 2 * np.pi / (e2 - e1)
        times = np.linspace(0.0, 10 * t_beat, 301)
        traj = propagate(sigma0, kernel, times)
        p_r, p_l, p_c = tunneling_probabilities(p, times)
        assert np.max(np.abs(traj.expectation(a_right) - p_r)) < 1e-10
        assert np.max(np.abs(traj.expectation(a_left) - p_l)) < 1e-10
        assert np.max(np.abs(traj.expectation(a_chaos) - p_c)) < 1e-10

    def test_pure_state_purity_one(self, driven):
        _, x = driven
        kernel = assemble_rwa_kernel(x, BathParams(1e-6, 1e-4))
        sigma0 = np.zeros((x.size, x.size), dtype=complex)
        sigma0[0, 0] = 1.0
        traj = propagate(sigma0, kernel, [0.0])
        assert traj.purity()[0] == pytest.approx(1.0, abs=1e-14)

    def test_trace_and_hermiticity_drift(self, driven):
        _, x = driven
        kernel = assemble_rwa_kernel(x, BathParams(1e-6, 1e-4))
        sigma0 = np.zeros((x.size, x.size), dtype=complex)
        sigma0[0, 0] = 0.6
        sigma0[1, 1] = 0.4
        times = np.linspace(0.0, 5e4, 11)
        traj = propagate(sigma0, kernel, times)
        assert traj.trace_drift < 1e-10
        assert traj.hermiticity_drift < 1e-10

    def test_periodic_generator_agrees_with_kernel_at_weak_damping(self, driven):
        _, x = driven
        bath = BathParams(1e-6, 1e-3)
        kernel = assemble_rwa_kernel(x, bath)
        gen = assemble_periodic_generator(x, bath)
        sigma0 = np.zeros((x.size, x.size), dtype=complex)
        sigma0[0, 0] = 0.5
        sigma0[1, 1] = 0.5
        period = 2 * np.pi / OMEGA
        times = np.array([0.0, 10 * period, 20 * period])
        t_kernel = propagate(sigma0, kernel, times)
        t_per = propagate(sigma0, gen, times, steps_per_period=64)
        assert np.max(np.abs(t_kernel.sigmas[-1] - t_per.sigmas[-1])) < 1e-6

    def test_rejects_bad_initial_state(self, driven):
        _, x = driven
        kernel = assemble_rwa_kernel(x, BathParams(1e-6, 1e-4))
        bad_trace = np.eye(x.size, dtype=complex)
        with pytest.raises(ValueError, match="unit trace"):
            propagate(bad_trace, kernel, [0.0, 1.0])
        bad_herm = np.zeros((x.size, x.size), dtype=complex)
        bad_herm[0, 0] = 1.0
        bad_herm[0, 1] = 0.5
        with pytest.raises(ValueError, match="Hermitian"):
            propagate(bad_herm, kernel, [0.0, 1.0])

    def test_parity_block_invariance_under_evolution(self, driven):
        _, x = driven
        kernel = assemble_rwa_kernel(x, BathParams(1e-6, 1e-4))
        sigma0 = np.zeros((x.size, x.size), dtype=complex)
        sigma0[0, 0] = 0.4
        sigma0[1, 1] = 0.3
        sigma0[2, 2] = 0.3
        odd_pair = [i for i in range(x.size) if x.parities[i] == -1][:2]
        sigma0[odd_pair[0], odd_pair[1]] = 0.05      # even-operator coherence
        sigma0[odd_pair[1], odd_pair[0]] = 0.05
        traj = propagate(sigma0, kernel, np.linspace(0, 1e6, 5))
        off_block = np.outer(x.parities, x.parities) == -1
        leak = max(float(np.max(np.abs(s[off_block]))) for s in traj.sigmas)
        assert leak < 1e-12


class TestTimeScales:
    def test_two_level_relaxation_matches_golden_rule(self, h0):
        spec = solve_spectrum(h0, D4, 16).lowest(2)
        x = x_fourier_coefficients(spec.states, h0.x_elements)
        delta = x.mean_energies[1] - x.mean_energies[0]
        x01 = abs(h0.x_elements[0, 1])
        for kt in (1e-4, 1e-2):
            bath = BathParams(1e-6, kt)
            kernel = assemble_rwa_kernel(x, bath)
            t_relax = relaxation_time(kernel)
            # analytic two-level spectrum from the golden-rule entries:
            # populations relax at w_down + w_up, the coherence pair at
            # -(w_down+w_up)/2 +- sqrt(((w_down+w_up)/2)^2 - delta^2); the
            # slowest nonzero rate is the overdamped localization mode when
            # the width exceeds the splitting
            w_down = 2 * bath_weight(-delta, bath) * x01**2
            w_up = 2 * bath_weight(+delta, bath) * x01**2
            half_width = 0.5 * (w_down + w_up)
            if half_width >= delta:
                slowest = half_width - np.sqrt(half_width**2 - delta**2)
            else:
                slowest = half_width
            slowest = min(slowest, w_down + w_up)
            assert t_relax == pytest.approx(1.0 / slowest, rel=0.01)

    def test_gamma_doubling_halves_relaxation_time(self, driven):
        _, x = driven
        t1 = relaxation_time(assemble_rwa_kernel(x, BathParams(1e-6, 1e-4)))
        t2 = relaxation_time(assemble_rwa_kernel(x, BathParams(2e-6, 1e-4)))
        assert t2 == pytest.approx(0.5 * t1, rel=0.01)

    def test_decoherence_time_runs_and_scales(self, driven):
        _, x = driven
        kernel = assemble_rwa_kernel(x, BathParams(1e-6, 1e-4))
        sigma0 = np.zeros((x.size, x.size), dtype=complex)
        sigma0[:2, :2] = 0.5
        t_dec = decoherence_time(kernel, sigma0, beat_period=1e4)
        assert t_dec > 0
        kernel2 = assemble_rwa_kernel(x, BathParams(2e-6, 1e-4))
        t_dec2 = decoherence_time(kernel2, sigma0, beat_period=1e4)
        assert t_dec2 < t_dec

    def test_decoherence_requires_threshold_reached(self, driven):
        _, x = driven
        kernel = assemble_rwa_kernel(x, BathParams(1e-12, 1e-4))
        sigma0 = np.zeros((x.size, x.size), dtype=complex)
        sigma0[:2, :2] = 0.5
        with pytest.raises(RuntimeError, match="insufficient propagation"):
            decoherence_time(kernel, sigma0, beat_period=1.0, max_beats=100)

    def test_closed_system_has_no_relaxation(self, driven):
        _, x = driven
        kernel = assemble_rwa_kernel(x, BathParams(0.0, 1e-4))
        with pytest.raises(RuntimeError, match="no relaxation"):
            relaxation_time(kernel)


class TestAsymptoticState:
    def test_undriven_boltzmann(self, undriven):
        _, x = undriven
        for kt in (1e-2, 3e-2):
            kernel = assemble_rwa_kernel(x, BathParams(1e-6, kt))
            sigma = asymptotic_state(kernel)
            pops = np.real(np.diag(sigma))
            boltz = np.exp(-(x.mean_energies - x.mean_energies[0]) / kt)
            boltz /= boltz.sum()
            mask = pops > 1e-10
            assert np.max(np.abs(pops[mask] / boltz[mask] - 1.0)) < 1e-6
            # occupation decays monotonically with energy
            assert np.all(np.diff(pops) <= 1e-12)

    def test_stationarity_residual(self, driven):
        _, x = driven
        kernel = assemble_rwa_kernel(x, BathParams(1e-6, 1e-4))
        sigma = asymptotic_state(kernel)
        assert np.max(np.abs(kernel.apply(sigma))) < 1e-10
        assert np.trace(sigma).real == pytest.approx(1.0, abs=1e-12)

    def test_disconnected_sectors_reported(self):
        # two bath-decoupled pairs: the stationary space is degenerate
        values = np.zeros((4, 4, 9), dtype=complex)
        values[0, 1, 4] = values[1, 0, 4] = 1.0     # only 0<->1 coupled
        x = XCoefficients(values=values,
                          quasienergies=np.array([0.0, 0.3, 0.05, 0.35]),
                          parities=np.array([1, -1, 1, -1]),
                          mean_energies=np.array([0.0, 0.3, 1.0, 1.3]),
                          omega=1.0, n_sidebands=2)
        kernel = assemble_rwa_kernel(x, BathParams(1e-6, 1e-2))
        with pytest.raises(RuntimeError, match="dimension"):
            asymptotic_state(kernel)


class TestThreeLevelRestriction:
    def test_restricted_kernel_preserves_trace(self, driven):
        _, x = driven
        kernel3 = restrict_to_three_levels(x, BathParams(1e-6, 1e-4), [0, 1, 2])
        col_sums = np.einsum("aacd->cd", kernel3.tensor)
        assert np.max(np.abs(col_sums)) < 1e-9 * np.max(np.abs(kernel3.tensor))
        assert kernel3.size == 3

    def test_undriven_low_temperature_agrees_with_full(self, undriven):
        # decay chain inside the lowest triple: both sizes settle into the
        # ground state
        _, x = undriven
        bath = BathParams(1e-6, 1e-3)
        full = asymptotic_state(assemble_rwa_kernel(x, bath))
        small = asymptotic_state(restrict_to_three_levels(x, bath, [0, 1, 2]))
        assert purity(full) == pytest.approx(purity(small), abs=1e-4)
        assert small[0, 0].real == pytest.approx(full[0, 0].real, abs=1e-4)

    def test_bad_labels_rejected(self, driven):
        _, x = driven
        with pytest.raises(ValueError, match="three"):
            restrict_to_three_levels(x, BathParams(1e-6, 1e-4), [0, 1])
        with pytest.raises(ValueError, match="outside"):
            restrict_to_three_levels(x, BathParams(1e-6, 1e-4), [0, 1, 99])


class TestLocalizedTriple:
    def test_vectors_orthonormal_and_localized(self, h0):
        spec = solve_spectrum(h0, D4.replace_amplitude(0.0145), 16).lowest(10)
        # spectator = odd partner (index by parity), mixed pair = the two
        # even states involved in the crossing
        parities = [s.parity for s in spec.states]
        i_odd = parities.index(-1)
        evens = [i for i, p in enumerate(parities) if p == +1][:2]
        triple = localized_triple(spec, (i_odd, evens[0], evens[1]),
                                  mixing_angle=0.3)
        for v in (triple.right, triple.left):
            assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)
        assert abs(triple.right @ triple.left) < 1e-12
        assert abs(triple.right @ triple.chaotic) < 1e-12
        x_elem = h0.x_elements
        u_right = sum(triple.right[i] * spec.states[i].wavefunction_t0()
                      for i in range(len(spec.states)))
        assert u_right @ x_elem @ u_right > 0.8 * D4.well_position

    def test_initial_density_matrix(self, h0):
        spec = solve_spectrum(h0, D4.replace_amplitude(0.0145), 16).lowest(10)
        parities = [s.parity for s in spec.states]
        i_odd = parities.index(-1)
        evens = [i for i, p in enumerate(parities) if p == +1][:2]
        triple = localized_triple(spec, (i_odd, evens[0], evens[1]), 0.3)
        sigma0 = triple.initial_density_matrix(10)
        assert np.trace(sigma0).real == pytest.approx(1.0)
        assert purity(sigma0) == pytest.approx(1.0)


class TestBathValidityFlags:
    def test_weak_coupling_warnings(self):
        bath = BathParams(1e-2, 1e-3)
        notes = bath.weak_coupling_warnings(min_gap=1e-3)
        assert len(notes) == 2
        assert BathParams(1e-6, 1e-3).weak_coupling_warnings(min_gap=1.0) == []
