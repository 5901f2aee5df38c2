import numpy as np
import pytest

from drivenwell import SystemParams
from drivenwell.classical import (
    EscapeError, PhasePoint, energy, flow, period_map_jacobian, portrait,
    stroboscopic_orbit,
)

UNDRIVEN = SystemParams(4.0, 0.0, 0.982)
DRIVEN = SystemParams(4.0, 0.015, 0.982)


class TestFlow:
    def test_fixed_points_of_static_force(self):
        for x0 in (0.0, UNDRIVEN.well_position, -UNDRIVEN.well_position):
            assert UNDRIVEN.force(x0) == pytest.approx(0.0, abs=1e-13)
            end = flow(PhasePoint(x0, 0.0), 7 * UNDRIVEN.period, UNDRIVEN)
            assert end.x == pytest.approx(x0, abs=1e-9)
            assert end.p == pytest.approx(0.0, abs=1e-9)

    def test_energy_conserved_undriven(self):
        seed = PhasePoint(4.2, 0.1)
        orbit = stroboscopic_orbit(seed, 1000, UNDRIVEN)
        e = energy(orbit[:, 0], orbit[:, 1], UNDRIVEN)
        assert np.max(np.abs(e - e[0])) < 1e-10

    def test_reversibility(self):
        fwd = flow(PhasePoint(3.0, 0.5), 50 * DRIVEN.period, DRIVEN)
        back = flow(fwd, -50 * DRIVEN.period, DRIVEN)
        assert abs(back.x - 3.0) < 1e-8
        assert abs(back.p - 0.5) < 1e-8

    def test_escape_guard(self):
        with pytest.raises(EscapeError):
            flow(PhasePoint(float("nan"), 0.0), DRIVEN.period, DRIVEN)

    def test_zero_duration(self):
        pt = PhasePoint(1.0, 2.0, 0.5)
        assert flow(pt, 0.0, DRIVEN) is pt


class TestSymplecticity:
    def test_period_map_jacobian_unimodular(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            pt = PhasePoint(rng.uniform(-7, 7), rng.uniform(-1, 1))
            jac = period_map_jacobian(pt, DRIVEN)
            assert abs(np.linalg.det(jac) - 1.0) < 1e-8


class TestStroboscopicOrbit:
    def test_well_seed_stays_in_one_well(self):
        orbit = stroboscopic_orbit(PhasePoint(DRIVEN.well_position, 0.0),
                                   2000, DRIVEN)
        assert np.all(orbit[:, 0] > 0)

    def test_separatrix_seed_crosses_wells(self):
        orbit = stroboscopic_orbit(PhasePoint(0.05, 0.05), 2000, DRIVEN)
        assert np.any(orbit[:, 0] > 1.0)
        assert np.any(orbit[:, 0] < -1.0)

    def test_undriven_points_on_energy_contour(self):
        orbit = stroboscopic_orbit(PhasePoint(5.5, 0.2), 300, UNDRIVEN)
        e = energy(orbit[:, 0], orbit[:, 1], UNDRIVEN)
        assert np.max(np.abs(e - e[0])) < 1e-10

    def test_generalized_parity_equivariance(self):
        # reflecting the seed and offsetting the phase by half a period
        # reflects the whole stroboscopic orbit
        seed = PhasePoint(5.2, 0.15, 0.0)
        mirrored = PhasePoint(-5.2, -0.15, DRIVEN.period / 2)
        a = stroboscopic_orbit(seed, 200, DRIVEN)
        b = stroboscopic_orbit(mirrored, 200, DRIVEN)
        assert np.max(np.abs(a + b)) < 1e-9

    def test_input_validation(self):
        with pytest.raises(ValueError):
            stroboscopic_orbit(PhasePoint(1.0, 0.0), 0, DRIVEN)


class TestPortrait:
    def test_batches_match_single_orbits(self):
        seeds = np.array([[5.6, 0.0], [1.2, 0.3], [0.1, -0.2]])
        cloud = portrait(seeds, 50, DRIVEN)
        assert cloud.shape == (3, 51, 2)
        for i, (x0, p0) in enumerate(seeds):
            single = stroboscopic_orbit(PhasePoint(x0, p0), 50, DRIVEN)
            assert np.array_equal(cloud[i], single)

    def test_rejects_empty_grid(self):
        with pytest.raises(ValueError):
            portrait(np.zeros((0, 2)), 10, DRIVEN)

    def test_mixed_phase_space_structure(self):
        # a coarse portrait shows both confined island orbits and a layer
        # orbit wandering between the wells
        seeds = np.array([[5.66, 0.0], [4.4, 0.0], [-5.66, 0.0], [0.07, 0.0]])
        cloud = portrait(seeds, 400, DRIVEN)
        island_right = cloud[0, :, 0]
        island_left = cloud[2, :, 0]
        layer = cloud[3, :, 0]
        assert np.all(island_right > 0)
        assert np.all(island_left < 0)
        assert np.any(layer > 1.0) and np.any(layer < -1.0)
