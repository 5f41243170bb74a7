import unittest
import math

import numpy as np
from numpy.testing import assert_allclose

from quantum_sensing_simulator.state import ProbeSpec, prepare_probe
from quantum_sensing_simulator.readout import bell_probabilities
from quantum_sensing_simulator.state import QuantumState
from quantum_sensing_simulator.evolution import (
    RotationAngles,
    VectorField,
    cartesian_probability_map,
    cartesian_state_map,
    ideal_bell_probabilities,
    ideal_state_map,
    ideal_unitary,
    rotated_bell_probabilities,
    rotated_bell_probabilities_cartesian,
    spherical_probability_map,
    zero_field_jacobian,
)
from quantum_sensing_simulator.fisher import (
    QuantumProjection,
    bounds,
    cfim,
    jacobian_fd,
    noise_covariance,
    propagate_errors,
    qfim_numeric,
)


def random_points(count: int, seed: int) -> list[tuple[VectorField, float]]:
    rng = np.random.default_rng(seed)
    return [
        (
            VectorField(rng.uniform(0.5, 2.5), rng.uniform(0.3, math.pi - 0.3), rng.uniform(-math.pi, math.pi)),
            rng.uniform(0.2, 1.1),
        )
        for _ in range(count)
    ]


def probe_probability_map(probe: np.ndarray, T: float, r: RotationAngles):
    """Rotated Bell-basis probabilities of an arbitrary probe under the ideal evolution."""
    state_map = ideal_state_map(probe, T)
    return lambda theta: bell_probabilities(QuantumState(state_map(theta)), r)


class TestIdealProbabilities(unittest.TestCase):
    def test_closed_form_matches_state_readout(self):
        probe = prepare_probe(ProbeSpec(1.0))
        for f, T in random_points(5, seed=1):
            u = ideal_unitary(f, T)
            evolved = QuantumState(u @ probe.rho @ u.conj().T)
            assert_allclose(bell_probabilities(evolved), ideal_bell_probabilities(f, T), atol=1e-12)

    def test_rotated_probabilities_match_state_readout(self):
        probe = prepare_probe(ProbeSpec(1.0))
        for r in (RotationAngles.uniform(), RotationAngles(0.4, -1.2, 0.7), bounds.optimal_rotation_angles()):
            for f, T in random_points(3, seed=2):
                u = ideal_unitary(f, T)
                evolved = QuantumState(u @ probe.rho @ u.conj().T)
                assert_allclose(bell_probabilities(evolved, r), rotated_bell_probabilities(f, T, r), atol=1e-12)

    def test_identity_rotation_is_unrotated_readout(self):
        f = VectorField(1.3, 0.8, 2.0)
        assert_allclose(
            rotated_bell_probabilities(f, 0.6, RotationAngles.identity()), ideal_bell_probabilities(f, 0.6), atol=1e-15
        )

    def test_probabilities_sum_to_one(self):
        for f, T in random_points(5, seed=3):
            self.assertAlmostEqual(float(np.sum(rotated_bell_probabilities(f, T, RotationAngles.uniform()))), 1.0)

    def test_uniform_rotation_at_zero_field(self):
        assert_allclose(
            rotated_bell_probabilities_cartesian(np.zeros(3), 0.5, RotationAngles.uniform()), np.full(4, 0.25), atol=1e-15
        )


class TestZeroFieldJacobian(unittest.TestCase):
    def test_uniform_rotation(self):
        T = 0.7
        expected = T / 2 * np.array([[1, 1, 1], [-1, 1, -1], [-1, -1, 1]])
        numeric = jacobian_fd(lambda x: cartesian_probability_map(T, RotationAngles.uniform())(x)[:3], np.zeros(3))
        assert_allclose(numeric, expected, atol=1e-6)
        assert_allclose(zero_field_jacobian(RotationAngles.uniform(), T), expected, atol=1e-15)

    def test_analytic_matches_finite_differences(self):
        T = 1.3
        for r in (RotationAngles(0.4, -1.2, 0.7), bounds.optimal_rotation_angles()):
            numeric = jacobian_fd(lambda x: cartesian_probability_map(T, r)(x)[:3], np.zeros(3))
            assert_allclose(numeric, zero_field_jacobian(r, T), atol=1e-8)


class TestIdealFisherInformation(unittest.TestCase):
    def test_qfim_is_optimal(self):
        probe = prepare_probe(ProbeSpec(1.0)).rho
        for f, T in random_points(20, seed=0):
            qfim = qfim_numeric(ideal_state_map(probe, T), f.as_array())
            expected = bounds.optimal_qfim_diagonal(f, T)
            assert_allclose(np.diag(qfim), expected, rtol=1e-5)
            scale = np.sqrt(np.outer(expected, expected))
            assert_allclose(qfim / scale, np.eye(3), atol=1e-5)

    def test_bell_measurement_reaches_qfim(self):
        probe = prepare_probe(ProbeSpec(1.0)).rho
        for f, T in random_points(20, seed=0):
            theta = f.as_array()
            qfim = qfim_numeric(ideal_state_map(probe, T), theta)
            classical = cfim(spherical_probability_map(T), theta)
            assert_allclose(np.diag(classical), np.diag(qfim), rtol=1e-5)

    def test_bell_measurement_bounded_by_qfim(self):
        for polarization in (1.0, 0.8):
            probe = prepare_probe(ProbeSpec(polarization)).rho
            for r in (RotationAngles.identity(), RotationAngles.uniform()):
                for f, T in random_points(10, seed=4):
                    theta = f.as_array()
                    qfim = qfim_numeric(ideal_state_map(probe, T), theta)
                    classical = cfim(probe_probability_map(probe, T, r), theta)
                    gap = np.max(np.linalg.eigvalsh(classical - qfim))
                    self.assertLessEqual(gap, 1e-6 * np.max(np.abs(qfim)))

    def test_mixed_probe_loses_information(self):
        probe = prepare_probe(ProbeSpec(0.8)).rho
        for r in (RotationAngles.identity(), RotationAngles.uniform()):
            for f, T in random_points(10, seed=5):
                theta = f.as_array()
                qfim = qfim_numeric(ideal_state_map(probe, T), theta)
                classical = cfim(probe_probability_map(probe, T, r), theta)
                self.assertLess(np.trace(classical), (1 - 1e-3) * np.trace(qfim))

    def test_multinomial_propagation_inverts_cfim(self):
        n = 1000
        checked = 0
        for f, T in random_points(20, seed=6):
            probabilities = spherical_probability_map(T)
            theta = f.as_array()
            p = probabilities(theta)
            if np.min(p) < 1e-3:
                continue
            jacobian = jacobian_fd(lambda x: probabilities(x)[:3], theta)
            sigma_theta = propagate_errors(jacobian, noise_covariance(p, QuantumProjection(n=n)))
            expected = np.linalg.inv(n * cfim(probabilities, theta))
            assert_allclose(sigma_theta, expected, rtol=1e-5, atol=1e-9 * np.max(np.abs(expected)))
            checked += 1
        self.assertGreaterEqual(checked, 5)

    def test_qfim_stable_under_smaller_step(self):
        for polarization in (1.0, 0.8):
            probe = prepare_probe(ProbeSpec(polarization)).rho
            for f, T in random_points(5, seed=7):
                state_map = ideal_state_map(probe, T)
                theta = f.as_array()
                coarse = qfim_numeric(state_map, theta, step=1e-5)
                fine = qfim_numeric(state_map, theta, step=5e-6)
                assert_allclose(fine, coarse, rtol=1e-6, atol=1e-8 * np.max(np.abs(coarse)))

    def test_cartesian_qfim(self):
        # Φ+ under B·σ: QFIM = 4T² I at B = 0
        probe = prepare_probe(ProbeSpec(1.0)).rho
        assert_allclose(qfim_numeric(cartesian_state_map(probe, 0.5), np.zeros(3)), np.eye(3), atol=1e-8)
