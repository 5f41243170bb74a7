import unittest
import math

import numpy as np
from numpy.testing import assert_allclose, assert_array_equal

from quantum_sensing_simulator.state import ProbeSpec, prepare_probe
from quantum_sensing_simulator.evolution import RotationAngles
from quantum_sensing_simulator.readout import (
    InvalidProbability,
    InvalidRate,
    InvalidSpamModel,
    MeasuredSignals,
    SpamModel,
    bell_probabilities,
    confusion_apply,
    measure_bell,
    spam_apply,
    spam_matrix,
)

FIG3_SPAM = SpamModel(polarization=0.85, zeta=0.20, gamma=0.15, eta=0.025)


def closed_form_signals(p: float, r: RotationAngles) -> tuple[float, float, float, float]:
    """Readout of P|Φ+><Φ+| + (1-P)|Φ-><Φ-| after the rotation r, from the Pauli amplitudes of r."""
    theta = r.half_angle()
    c2 = math.cos(theta) ** 2
    mx2, my2, mz2 = (math.sin(theta) * r.axis()) ** 2
    p1 = p * my2 + (1 - p) * mx2
    p2 = p * mx2 + (1 - p) * my2
    p3 = p * mz2 + (1 - p) * c2
    p4 = p * c2 + (1 - p) * mz2
    return p1, p2, p3, p4


class TestMeasuredSignals(unittest.TestCase):
    def test_validation(self):
        MeasuredSignals(0.1, 0.2, 0.3, 0.4)
        MeasuredSignals(0.1, 0.2, 0.3)
        with self.assertRaises(InvalidProbability):
            MeasuredSignals(0.5, 0.5, 0.5)
        with self.assertRaises(InvalidProbability):
            MeasuredSignals(0.2, 0.3, 0.1, 0.1)
        with self.assertRaises(InvalidProbability):
            MeasuredSignals(-0.1, 0.3, 0.1)

    def test_retained(self):
        signals = MeasuredSignals(0.1, 0.2, 0.3, 0.4)
        assert_array_equal(signals.retained(), [0.1, 0.2, 0.3])
        self.assertEqual(signals.as_tuple(), (0.1, 0.2, 0.3, 0.4))


class TestBellReadout(unittest.TestCase):
    def test_unrotated_probe(self):
        signals = measure_bell(prepare_probe(ProbeSpec(0.85)), RotationAngles.identity())
        assert_allclose(signals.as_tuple(), (0.0, 0.0, 0.15, 0.85), atol=1e-14)

    def test_rotated_probe_matches_closed_form(self):
        rotations = (
            RotationAngles.uniform(),
            RotationAngles(0.4, -1.2, 0.7),
            RotationAngles(1.1, 2.5, 1.6),
        )
        for p in (0.5, 0.85, 1.0):
            for r in rotations:
                signals = measure_bell(prepare_probe(ProbeSpec(p)), r)
                assert_allclose(signals.as_tuple(), closed_form_signals(p, r), atol=1e-12)

    def test_uniform_readout_of_pure_probe(self):
        signals = measure_bell(prepare_probe(ProbeSpec(1.0)), RotationAngles.uniform())
        assert_allclose(signals.as_tuple(), np.full(4, 0.25), atol=1e-12)

    def test_bell_probabilities_of_probe(self):
        assert_allclose(bell_probabilities(prepare_probe(ProbeSpec(0.85))), [0.85, 0.15, 0, 0], atol=1e-14)


class TestSpam(unittest.TestCase):
    def test_model_validation(self):
        SpamModel.ideal()
        with self.assertRaises(InvalidRate):
            SpamModel(zeta=-0.1)
        with self.assertRaises(InvalidRate):
            SpamModel(polarization=1.5)
        with self.assertRaises(InvalidSpamModel):
            SpamModel(gamma=0.3, eta=0.25)

    def test_leakage_map(self):
        signals = spam_apply(MeasuredSignals(0.1, 0.2, 0.3, 0.4), FIG3_SPAM)
        self.assertIsNone(signals.p4)
        assert_allclose(signals.as_tuple(), (0.1, 0.8 * 0.2 + 0.025 * 0.3, 0.65 * 0.3), atol=1e-15)

    def test_leakage_is_linear(self):
        rng = np.random.default_rng(7)
        matrix = spam_matrix(FIG3_SPAM)
        for p in rng.dirichlet(np.ones(4), size=20):
            signals = MeasuredSignals(*p[:3])
            assert_array_equal(spam_apply(signals, FIG3_SPAM).retained(), matrix @ p[:3])

    def test_ideal_model_changes_nothing(self):
        signals = MeasuredSignals(0.1, 0.2, 0.3)
        assert_array_equal(spam_apply(signals, SpamModel.ideal()).retained(), signals.retained())

    def test_zero_loop_rotated_signals(self):
        # N = 0: probe mixture read out after the rotation, then the leakage map
        for c in np.linspace(0, 2, 9):
            r = RotationAngles(RotationAngles.uniform().a, RotationAngles.uniform().b, float(c))
            signals = spam_apply(measure_bell(prepare_probe(ProbeSpec(0.85)), r), FIG3_SPAM)
            p1, p2, p3, _ = closed_form_signals(0.85, r)
            expected = (p1, 0.8 * p2 + 0.025 * p3, 0.65 * p3)
            assert_allclose(signals.as_tuple(), expected, atol=1e-10)


class TestConfusion(unittest.TestCase):
    def test_preserves_simplex(self):
        rng = np.random.default_rng(11)
        for p in rng.dirichlet(np.ones(4), size=20):
            for epsilon in (0.0, 0.05, 0.3):
                q = confusion_apply(p, epsilon)
                self.assertAlmostEqual(float(np.sum(q)), 1.0, places=14)
                self.assertTrue(np.all(q >= 0))

    def test_uniform_is_fixed_point(self):
        assert_allclose(confusion_apply(np.full(4, 0.25), 0.2), np.full(4, 0.25), atol=1e-15)

    def test_rejects_rate(self):
        with self.assertRaises(InvalidRate):
            confusion_apply(np.full(4, 0.25), 1.0)
