import unittest
import contextlib
import io
import math
import os
import tempfile

import numpy as np
from numpy.testing import assert_allclose

from quantum_sensing_simulator.cli import (
    COMMANDS,
    emit_csv,
    main,
    parse_csv,
    read_csv,
    render_aligned,
    render_csv,
    run_scenario,
)
from quantum_sensing_simulator.cli.cli import EXIT_CONFIG, EXIT_IO, EXIT_OK, EXIT_PIPELINE, get_command
from quantum_sensing_simulator.config import ConfigParser
from quantum_sensing_simulator.experiments import Column, InvalidTable, Table

OPTIMUM = 3 * (math.sqrt(3) + 2) / 2


def parse(text):
    return ConfigParser().parse(text)


class TestOutput(unittest.TestCase):
    def table(self):
        table = Table(columns=(Column("N"), Column("T", "us"), Column("strategy")))
        table.add_row(1, 0.5, "uniform_rotated")
        table.add_row(16, 1 / 3, "optimal_rotated")
        return table

    def test_render_csv(self):
        text = render_csv(self.table())
        self.assertEqual(text.splitlines()[0], "N,T[us],strategy")
        self.assertEqual(text.splitlines()[2], "16,0.333333333333,optimal_rotated")
        parsed = parse_csv(text)
        self.assertEqual(parsed.columns, self.table().columns)
        self.assertEqual(parsed.rows[0], (1, 0.5, "uniform_rotated"))

    def test_render_aligned(self):
        lines = render_aligned(self.table()).splitlines()
        self.assertEqual(len(lines), 4)
        self.assertEqual(len({len(line) for line in lines}), 1)
        self.assertTrue(set(lines[1]) <= {"-", "+"})

    def test_emit(self):
        stream = io.StringIO()
        emit_csv(self.table(), stream=stream)
        self.assertEqual(stream.getvalue(), render_csv(self.table()))
        with self.assertRaises(InvalidTable):
            emit_csv(Table(columns=(Column("N"),)), stream=stream)
        with self.assertRaises(InvalidTable):
            emit_csv(self.table(), format="json", stream=stream)

    def test_file_output(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "table.csv")
            emit_csv(self.table(), path)
            self.assertEqual(read_csv(path).rows, parse_csv(render_csv(self.table())).rows)

    def test_malformed_header(self):
        with self.assertRaises(InvalidTable):
            parse_csv("N[us,T\n1,2\n")
        with self.assertRaises(InvalidTable):
            parse_csv("")


class TestRunScenario(unittest.TestCase):
    def test_default_configurations_parse(self):
        for command in COMMANDS:
            document = ConfigParser().parse(command.default_config())
            self.assertIsNotNone(document)
        self.assertEqual(
            [command.get_name() for command in COMMANDS],
            ["ideal-qfim", "rotated-optimum", "nv-sweep", "scaling", "compare", "maps", "projection-vs-shot"],
        )
        with self.assertRaises(KeyError):
            get_command("simulate")

    def test_compare(self):
        result = run_scenario("compare", parse("[compare]\nsigma0 = 0.02\nn = 3\nT = 1 us\nstarts = 3"))
        self.assertEqual(result.exit_status, EXIT_OK)
        in_unit = result.table.column("value_in_unit").astype(float)
        assert_allclose(in_unit, [9.0, 6.0, OPTIMUM, 0.75, 2.25], rtol=1e-6)

    def test_scaling(self):
        config = "[probe]\npolarization = 1\n[sequence.rotation]\npreset = uniform\n[spam]\nenabled = false\n"
        result = run_scenario("scaling", parse(config + "[scaling]\nn_values = [1, 2, 4]"))
        self.assertEqual(result.exit_status, EXIT_OK)
        deltas = result.table.column("delta_omega")
        self.assertTrue(np.all(deltas[1:] < deltas[:-1]))

    def test_singular_pipeline(self):
        config = "[probe]\npolarization = 0.5\n[sequence.rotation]\npreset = uniform\n[scaling]\nn_values = [1, 2]"
        result = run_scenario("scaling", parse(config))
        self.assertEqual(result.exit_status, EXIT_PIPELINE)
        self.assertIn("SingularJacobian", result.message)
        self.assertIsNone(result.table)

    def test_configuration_errors(self):
        result = run_scenario("nv-sweep", parse("[sweep]\naxis = omega\ngrid = [] MHz"))
        self.assertEqual(result.exit_status, EXIT_CONFIG)
        result = run_scenario("nv-sweep", parse("[sweep]\naxis = omega"))
        self.assertEqual(result.exit_status, EXIT_CONFIG)

    def test_sweep(self):
        result = run_scenario("nv-sweep", parse("[sweep]\naxis = phi\ngrid = linspace(0, 180, 5) deg"))
        self.assertEqual(result.exit_status, EXIT_OK)
        self.assertEqual(len(result.table), 5)
        self.assertEqual(result.table.columns[0].header, "phi[rad]")


class TestMain(unittest.TestCase):
    def test_output_file(self):
        with tempfile.TemporaryDirectory() as directory:
            config = os.path.join(directory, "optimum.cfg")
            out = os.path.join(directory, "optimum.csv")
            with open(config, "w", encoding="utf-8") as file:
                file.write("[optimize]\nsigma0 = 0.02\nT = 1 us\nstarts = 2\n")
            self.assertEqual(main(["rotated-optimum", "--config", config, "--out", out, "--seed", "3"]), EXIT_OK)
            table = read_csv(out)
            self.assertEqual(table.columns[0].header, "a[rad]")
            self.assertAlmostEqual(table.column("value_in_unit")[0] / OPTIMUM, 1.0, places=6)

    def test_exit_codes(self):
        with tempfile.TemporaryDirectory() as directory:
            broken = os.path.join(directory, "broken.cfg")
            with open(broken, "w", encoding="utf-8") as file:
                file.write("[sequence]\nn_loops 4\n")
            stderr = io.StringIO()
            with contextlib.redirect_stderr(stderr):
                self.assertEqual(main(["scaling", "--config", broken]), EXIT_CONFIG)
                self.assertEqual(main(["scaling", "--config", os.path.join(directory, "missing.cfg")]), EXIT_IO)
            self.assertIn("syntax error in line 2", stderr.getvalue())

    def test_table_format(self):
        stdout = io.StringIO()
        with contextlib.redirect_stdout(stdout):
            self.assertEqual(main(["ideal-qfim", "--format", "table", "--log-level", "ERROR"]), EXIT_OK)
        lines = stdout.getvalue().splitlines()
        self.assertEqual(len(lines), 22)
        self.assertIn("qfim_B", lines[0])

    def test_missing_subcommand(self):
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit):
                main([])
