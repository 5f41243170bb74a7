import unittest
import math

import numpy as np
from numpy.testing import assert_allclose

from quantum_sensing_simulator.evolution import DriveParams, RotationAngles, VectorField
from quantum_sensing_simulator.fisher import bounds
from quantum_sensing_simulator.experiments import build_simulation, nv_scenario, sequential_figure_of_merit
from quantum_sensing_simulator.simulation import (
    IdealFieldSimulation,
    NvDriveSimulation,
    Parametrization,
    PerformanceMetrics,
    PipelineExecutionException,
)


class TestNvDriveSimulation(unittest.TestCase):
    def test_uniform_readout_at_control_point(self):
        simulation = build_simulation(nv_scenario(n_loops=4, polarization=1.0, with_spam=False, rotation=RotationAngles.uniform()))
        self.assertIsInstance(simulation, NvDriveSimulation)
        signals = simulation.signals(simulation.control_point())
        assert_allclose(signals.as_tuple(), [0.25] * 4, atol=1e-7)

    def test_unrotated_readout_at_control_point(self):
        simulation = build_simulation(nv_scenario(n_loops=2, polarization=1.0, with_spam=False))
        signals = simulation.signals(simulation.control_point())
        assert_allclose(signals.as_tuple(), [0.0, 0.0, 0.0, 1.0], atol=1e-7)
        assert_allclose(simulation.retained_signals(simulation.control_point()), [0.0, 0.0, 0.0], atol=1e-7)

    def test_signals_move_away_from_control_point(self):
        simulation = build_simulation(nv_scenario(n_loops=1, polarization=1.0, with_spam=False))
        theta = simulation.control_point() + np.array([2.0, 0.0, 0.0])
        self.assertGreater(1 - simulation.signals(theta).p4, 1e-4)

    def test_parameter_names(self):
        simulation = build_simulation(nv_scenario())
        self.assertEqual(simulation.parameter_names, ("omega", "delta", "phi"))

    def test_errors_are_wrapped(self):
        simulation = build_simulation(nv_scenario())
        with self.assertRaises(PipelineExecutionException) as context:
            simulation.signals([1.0, 2.0])
        self.assertEqual(context.exception.stage, "readout")
        self.assertIn("NvDriveSimulation", context.exception.scenario_repr)
        with self.assertRaises(PipelineExecutionException) as context:
            simulation.evolve([1.0])
        self.assertEqual(context.exception.stage, "evolve")

    def test_performance_metrics(self):
        simulation = build_simulation(nv_scenario())
        theta = simulation.control_point()
        for _ in range(3):
            simulation.signals(theta)
        metrics = simulation.get_performance_metrics()
        self.assertEqual(metrics.evaluation_count, 3)
        self.assertGreater(metrics.get_execution_time(), 0)
        with self.assertRaises(PipelineExecutionException):
            simulation.signals([0.0])
        self.assertEqual(metrics.evaluation_count, 3)
        self.assertIsNone(metrics._start)


class TestIdealFieldSimulation(unittest.TestCase):
    def test_parametrization(self):
        field = IdealFieldSimulation(truth=VectorField(1.0, 0.5, 0.2), n_loops=2, dwell=0.1)
        self.assertIs(field.parametrization, Parametrization.FIELD)
        self.assertEqual(field.parameter_names, ("B", "alpha", "beta"))
        drive = IdealFieldSimulation(truth=DriveParams(1.0, 0.5, 0.2), n_loops=2, dwell=0.1)
        self.assertIs(drive.parametrization, Parametrization.DRIVE)
        self.assertEqual(drive.parameter_names, ("omega", "delta", "phi"))

    def test_truth_is_cancelled(self):
        simulation = IdealFieldSimulation(truth=VectorField(1.3, 0.9, -0.4), n_loops=5, dwell=0.2)
        signals = simulation.signals(simulation.control_point())
        assert_allclose(signals.as_tuple(), [0.0, 0.0, 0.0, 1.0], atol=1e-12)

    def test_sequential_figure_of_merit_closed_form(self):
        for B, t, N in ((2.0, 0.1, 3), (0.7, 0.3, 1), (5.0, 0.05, 8)):
            f = VectorField(B, 1.1, 0.6)
            self.assertAlmostEqual(
                sequential_figure_of_merit(f, t, N) / bounds.sequential_scheme_figure_of_merit(B, t, N),
                1.0,
                places=5,
            )

    def test_sequential_figure_of_merit_approaches_projection_limit(self):
        t, N = 0.1, 4
        f = VectorField(1e-3 / t, math.pi / 3, 0.4)
        value = sequential_figure_of_merit(f, t, N, n=2)
        self.assertAlmostEqual(value / bounds.simultaneous_projection_limit(2, N * t), 1.0, places=3)


class TestPerformanceMetrics(unittest.TestCase):
    def test_nested_timer(self):
        metrics = PerformanceMetrics()
        self.assertEqual(metrics.get_execution_time(), 0)
        metrics.resume_timer()
        metrics.resume_timer()
        metrics.stop_timer()
        self.assertIsNotNone(metrics._start)
        metrics.stop_timer()
        self.assertIsNone(metrics._start)
        elapsed = metrics.get_execution_time()
        metrics.stop_timer()
        self.assertEqual(metrics.get_execution_time(), elapsed)

    def test_repr(self):
        metrics = PerformanceMetrics()
        metrics.count_evaluation()
        self.assertIn("evaluations: 1", repr(metrics))
