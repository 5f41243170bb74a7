import unittest
import math

import numpy as np
from numpy.testing import assert_allclose

from quantum_sensing_simulator.config import (
    ConfigParser,
    ConfigSyntaxError,
    ConfigUnitError,
    ConfigValueError,
    DuplicateKeyError,
    UnknownKeyError,
    UnknownSectionError,
    build_ideal,
    build_maps,
    build_noise,
    build_optimize,
    build_projection,
    build_rotation,
    build_scaling,
    build_scenario,
    build_sweep,
)
from quantum_sensing_simulator.evolution import FiniteDuration, RotationAngles, VectorField
from quantum_sensing_simulator.experiments import ModelKind, SweepAxis, nv_scenario
from quantum_sensing_simulator.fisher import Averaged, QuantumProjection, SingleShot, bounds


class TestConfigParser(unittest.TestCase):
    config = """
# drive sensing with the default control

[model]
kind = nv   # the NV pair
[probe]
polarization = 0.9

[sequence]
n_loops = 4
dwell = 30 ns
hyperfine = -2.16 MHz
compensate = false
#phi_1 = 3 rad

[sequence.rotation]
preset = uniform

[control]
omega = 11.2 MHz
delta = 500 kHz
phi = 90 deg
"""

    def test_sanitize(self):
        parser = ConfigParser()
        parser.parse(self.config)
        self.assertEqual(parser.sanitized_lines[0], (4, "[model]"))
        self.assertEqual(parser.sanitized_lines[1], (5, "kind = nv"))
        self.assertNotIn("#phi_1 = 3 rad", [line for _, line in parser.sanitized_lines])

    def test_values_in_internal_units(self):
        document = ConfigParser().parse(self.config)
        self.assertEqual(document.get("model", "kind"), "nv")
        self.assertEqual(document.get("sequence", "n_loops"), 4)
        self.assertAlmostEqual(document.get("sequence", "dwell"), 0.03)
        self.assertAlmostEqual(document.get("sequence", "hyperfine"), -2.16 * 2 * math.pi)
        self.assertIs(document.get("sequence", "compensate"), False)
        self.assertAlmostEqual(document.get("control", "delta"), 0.5 * 2 * math.pi)
        self.assertAlmostEqual(document.get("control", "phi"), math.pi / 2)
        self.assertEqual(document.get("sequence.rotation", "preset"), "uniform")
        self.assertTrue(document.has_section("sequence.rotation"))
        self.assertFalse(document.has_section("spam"))
        self.assertIsNone(document.get("sequence", "phi_1"))
        entry = document.entry("sequence", "dwell")
        self.assertEqual((entry.unit, entry.line_number, entry.line), ("ns", 11, "dwell = 30 ns"))

    def test_lists_and_grids(self):
        document = ConfigParser().parse(
            "[scaling]\nn_values = [1, 2, 4]\n[maps]\nt_values = linspace(0.5, 1.5, 3) us\nb_values = [1, 2] MHz"
        )
        self.assertEqual(document.get("scaling", "n_values"), [1, 2, 4])
        assert_allclose(document.get("maps", "t_values"), [0.5, 1.0, 1.5])
        assert_allclose(document.get("maps", "b_values"), [2 * math.pi, 4 * math.pi])
        self.assertEqual(ConfigParser().parse("[scaling]\nn_values = linspace(1, 3, 3)").get("scaling", "n_values"), [1, 2, 3])

    def test_syntax_error(self):
        with self.assertRaises(ConfigSyntaxError) as context:
            ConfigParser().parse("[sequence]\n\nn_loops 4")
        self.assertEqual(context.exception.line_number, 3)
        self.assertEqual(context.exception.line, "n_loops 4")
        for text in ("[sequence", "[sequence]\ndwell = 30 fortnights", "[scaling]\nn_values = [1, 2"):
            with self.assertRaises(ConfigSyntaxError):
                ConfigParser().parse(text)

    def test_unknown_names(self):
        with self.assertRaises(UnknownSectionError):
            ConfigParser().parse("[readout]")
        with self.assertRaises(UnknownKeyError) as context:
            ConfigParser().parse("n_loops = 4")
        self.assertEqual(context.exception.section, "")
        with self.assertRaises(UnknownKeyError):
            ConfigParser().parse("[sequence]\nloops = 4")

    def test_duplicate_key(self):
        with self.assertRaises(DuplicateKeyError) as context:
            ConfigParser().parse("[sequence]\nn_loops = 4\n[probe]\npolarization = 1\n[sequence]\nn_loops = 8")
        self.assertEqual(context.exception.line_number, 6)

    def test_units(self):
        for text in (
            "[sequence]\ndwell = 30",
            "[sequence]\ndwell = 30 MHz",
            "[probe]\npolarization = 0.9 us",
            "[maps]\nt_values = [1, 2] deg",
        ):
            with self.assertRaises(ConfigUnitError):
                ConfigParser().parse(text)
        self.assertIn("a time unit", repr(self._unit_error("[sequence]\ndwell = 30")))

    def _unit_error(self, text):
        try:
            ConfigParser().parse(text)
        except ConfigUnitError as e:
            return e

    def test_value_kinds(self):
        for text in (
            "[sequence]\nn_loops = 1.5",
            "[sequence]\ncompensate = 1",
            "[model]\nkind = quantum",
            "[probe]\npolarization = high",
            "[sequence]\nn_loops = [1, 2]",
            "[scaling]\nn_values = [1, 2.5]",
            "[scaling]\nn_values = linspace(1, 2, 0)",
        ):
            with self.assertRaises(ConfigValueError):
                ConfigParser().parse(text)


class TestScenarioBuilder(unittest.TestCase):
    def build(self, text):
        return build_scenario(ConfigParser().parse(text))

    def test_defaults(self):
        self.assertEqual(self.build(""), nv_scenario())

    def test_configured_scenario(self):
        scenario = build_scenario(ConfigParser().parse(TestConfigParser.config))
        self.assertIs(scenario.model, ModelKind.NV_DRIVE)
        self.assertEqual(scenario.sequence.n_loops, 4)
        self.assertEqual(scenario.sequence.pi_pulse_phases, (0.0, 0.0))
        self.assertEqual(scenario.sequence.rotation, RotationAngles.uniform())
        self.assertEqual(scenario.spam.polarization, 0.9)
        assert_allclose(scenario.target.as_array(), [11.2 * 2 * math.pi, math.pi, math.pi / 2])

    def test_compensation(self):
        scenario = self.build("[control]\ndelta = 1 MHz")
        self.assertAlmostEqual(scenario.sequence.pi_pulse_phases[0], -2 * math.pi * 0.03 / 2)
        self.assertEqual(self.build("[control]\ndelta = 1 MHz\n[sequence]\nphi_1 = 0.1 rad").sequence.pi_pulse_phases, (0.1, 0.0))

    def test_ideal_model(self):
        with self.assertRaises(ConfigValueError):
            self.build("[model]\nkind = ideal\n[target]\nB = 1 rad/us")
        scenario = self.build("[model]\nkind = ideal\n[target]\nB = 1 rad/us\nalpha = 45 deg\nbeta = 0 rad")
        self.assertEqual(scenario.target, VectorField(1.0, math.pi / 4, 0.0))
        self.assertIsNone(scenario.spam)
        self.assertEqual(scenario.probe.polarization_population, 1.0)

    def test_rejected_values_keep_their_line(self):
        with self.assertRaises(ConfigValueError) as context:
            self.build("[probe]\npolarization = 1.5")
        self.assertEqual(context.exception.line_number, 2)
        self.assertEqual(context.exception.key, "probe.polarization")
        with self.assertRaises(ConfigValueError):
            self.build("[sequence]\nn_loops = -1")
        with self.assertRaises(ConfigValueError):
            self.build("[sequence]\npulses = finite")
        scenario = self.build("[sequence]\npulses = finite\npulse_rabi = 20 MHz")
        self.assertEqual(scenario.sequence.pulses, FiniteDuration(rabi=40 * math.pi))

    def test_rotation(self):
        document = ConfigParser().parse("[sequence.rotation]\na = 0.1 rad\nb = 0.2 rad\nc = 0.5")
        self.assertEqual(build_rotation(document), RotationAngles(0.1, 0.2, 0.5))
        with self.assertRaises(ConfigValueError):
            build_rotation(ConfigParser().parse("[sequence.rotation]\na = 0.1 rad\nb = 0.2 rad"))
        optimal = build_rotation(ConfigParser().parse("[sequence.rotation]\npreset = optimal"))
        self.assertEqual(optimal, bounds.optimal_rotation_angles())

    def test_noise(self):
        self.assertEqual(build_noise(ConfigParser().parse("")), Averaged())
        self.assertEqual(
            build_noise(ConfigParser().parse("[noise]\nkind = projection\nshots = 1000")), QuantumProjection(n=1000)
        )
        self.assertEqual(
            build_noise(ConfigParser().parse("[noise]\nkind = single_shot\nshots = 10\nepsilon = 0.1")),
            SingleShot(n=10, epsilon=0.1),
        )
        for text in ("[noise]\nkind = single_shot", "[noise]\nsigma = 0", "[noise]\nkind = projection\nshots = 0"):
            with self.assertRaises(ConfigValueError):
                build_noise(ConfigParser().parse(text))


class TestParameterBuilders(unittest.TestCase):
    def test_sweep(self):
        parameters = build_sweep(ConfigParser().parse("[sweep]\naxis = phi\ngrid = linspace(0, 180, 3) deg"))
        self.assertIs(parameters.axis, SweepAxis.PHI)
        assert_allclose(parameters.grid, [0.0, math.pi / 2, math.pi])
        parameters = build_sweep(ConfigParser().parse("[sweep]\naxis = rotation\ngrid = [0, 0.5, 1]"))
        assert_allclose(parameters.grid, [0.0, 0.5, 1.0])
        for text in (
            "[sweep]\naxis = omega",
            "[sweep]\naxis = omega\ngrid = [] MHz",
            "[sweep]\naxis = rotation\ngrid = [0, 1] deg",
            "[sweep]\naxis = omega\ngrid = [0, 1] deg",
        ):
            with self.assertRaises((ConfigValueError, ConfigUnitError)):
                build_sweep(ConfigParser().parse(text))

    def test_scaling_and_projection(self):
        self.assertEqual(build_scaling(ConfigParser().parse("")), [1, 2, 4, 8, 16])
        self.assertEqual(build_scaling(ConfigParser().parse("[scaling]\nn_values = [3, 5]")), [3, 5])
        parameters = build_projection(ConfigParser().parse("[projection]\nshots = 1000\ninclude_projection = true"))
        self.assertEqual((parameters.shots, parameters.include_projection), (1000, True))
        with self.assertRaises(ConfigValueError):
            build_projection(ConfigParser().parse("[projection]\nn_values = []"))

    def test_optimize(self):
        parameters = build_optimize(ConfigParser().parse("[compare]\nn = 3\nT = 1 us"), "compare")
        self.assertEqual((parameters.n, parameters.T), (3, 1.0))
        with self.assertRaises(ConfigValueError) as context:
            build_optimize(ConfigParser().parse("[optimize]\nT = -1 us"))
        self.assertEqual(context.exception.key, "optimize.T")

    def test_maps(self):
        parameters = build_maps(ConfigParser().parse("[maps]\ngrid_size = 4\nt_max = 2 us\nrotation = uniform"))
        self.assertEqual((len(parameters.b_values), len(parameters.t_values)), (4, 4))
        self.assertAlmostEqual(parameters.t_values[-1], 2.0)
        self.assertEqual(parameters.rotation, RotationAngles.uniform())
        self.assertIsNone(build_maps(ConfigParser().parse("")).rotation)

    def test_ideal(self):
        parameters = build_ideal(ConfigParser().parse("[ideal]\nrandom_points = 3"), seed=4)
        self.assertEqual(len(parameters.points), 3)
        self.assertEqual(parameters.points, build_ideal(ConfigParser().parse("[ideal]\nrandom_points = 3"), seed=4).points)
        parameters = build_ideal(
            ConfigParser().parse("[ideal]\nB = [1, 2] rad/us\nalpha = [0.5, 1] rad\nbeta = [0, 1] rad\nT = [1, 0.5] us")
        )
        self.assertEqual(parameters.points[1], (VectorField(2.0, 1.0, 1.0), 0.5))
        with self.assertRaises(ConfigValueError):
            build_ideal(ConfigParser().parse("[ideal]\nB = [1, 2] rad/us\nalpha = [0.5] rad\nbeta = [0] rad\nT = [1] us"))
        with self.assertRaises(ConfigValueError):
            build_ideal(ConfigParser().parse("[ideal]\nB = [1] rad/us\nalpha = [4] rad\nbeta = [0] rad\nT = [1] us"))
