from __future__ import annotations
from abc import ABC, abstractmethod
from dataclasses import dataclass
from importlib import resources
from typing import Optional, Sequence
import argparse
import logging
import os.path
import sys

from quantum_sensing_simulator.config import (
    ConfigDocument,
    ConfigError,
    ConfigParser,
    build_ideal,
    build_maps,
    build_optimize,
    build_projection,
    build_scaling,
    build_scenario,
    build_sweep,
)
from quantum_sensing_simulator.experiments import (
    Column,
    InvalidTable,
    Table,
    build_simulation,
    compare_strategies,
    fit_sensitivities,
    ideal_qfim_table,
    mixed_probe_table,
    optimize_rotation,
    projection_vs_shot,
    sensitivity_map,
    sensitivity_table,
    sensitivity_vs_n,
    sweep_signal,
)
from quantum_sensing_simulator.simulation import PipelineExecutionException
from .output import FORMATS, emit_csv

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PIPELINE = 3
EXIT_IO = 4


@dataclass
class CommandResult:
    """Return value of a Command: the table to emit, or the exit status and message of a failure."""

    table: Optional[Table]
    exit_status: int = EXIT_OK
    message: str = ""


class Command(ABC):
    """Abstract Command class, that all cli commands need to implement."""

    _name: str = ""
    _help: str = ""

    @abstractmethod
    def __call__(self, document: ConfigDocument, seed: int) -> Table:
        pass

    def get_name(self) -> str:
        return self._name

    def get_help(self) -> str:
        return self._help

    def default_config(self) -> str:
        """The bundled configuration of this command."""
        return (
            resources.files("quantum_sensing_simulator.cli")
            .joinpath("defaults", f"{self._name}.cfg")
            .read_text(encoding="utf-8")
        )


class IdealQfimCommand(Command):
    _name = "ideal-qfim"
    _help = "QFIM and CFIM of the Bell probe under the ideal model, or the mixed-probe scalar QFI"

    def __call__(self, document: ConfigDocument, seed: int) -> Table:
        parameters = build_ideal(document, seed)
        if parameters.table == "mixed":
            return mixed_probe_table(
                parameters.polarizations, parameters.mixed_alpha, parameters.mixed_beta, parameters.mixed_T
            )
        return ideal_qfim_table(parameters.points)


class RotatedOptimumCommand(Command):
    _name = "rotated-optimum"
    _help = "readout rotation minimizing the zero-field figure of merit under averaged readout"

    def __call__(self, document: ConfigDocument, seed: int) -> Table:
        parameters = build_optimize(document, "optimize")
        optimum = optimize_rotation(
            parameters.sigma0, parameters.n, parameters.T, starts=parameters.starts, seed=seed
        )
        unit = parameters.sigma0**2 / (parameters.n * parameters.T**2)
        table = Table(
            columns=(
                Column("a", "rad"),
                Column("b", "rad"),
                Column("c"),
                Column("value"),
                Column("value_in_unit"),
                Column("converged_starts"),
            )
        )
        angles = optimum.angles
        table.add_row(angles.a, angles.b, angles.c, optimum.value, optimum.value / unit, optimum.converged_starts)
        return table


class NvSweepCommand(Command):
    _name = "nv-sweep"
    _help = "readout signals while one drive parameter or the readout rotation is swept"

    def __call__(self, document: ConfigDocument, seed: int) -> Table:
        parameters = build_sweep(document)
        return sweep_signal(build_scenario(document), parameters.axis, parameters.grid)


class ScalingCommand(Command):
    _name = "scaling"
    _help = "sensitivities against the number of loops, with power-law exponents in the log"

    def __call__(self, document: ConfigDocument, seed: int) -> Table:
        scenario = build_scenario(document)
        points = sensitivity_vs_n(scenario, build_scaling(document))
        names = build_simulation(scenario).parameter_names
        if len(points) >= 3:
            for name, fit in zip(names, fit_sensitivities(points)):
                logger.info("%s: exponent %.4f +- %.4f", name, fit.exponent, fit.stderr)
        return sensitivity_table(points, names)


class CompareCommand(Command):
    _name = "compare"
    _help = "sequential against simultaneous estimation strategies at zero field"

    def __call__(self, document: ConfigDocument, seed: int) -> Table:
        parameters = build_optimize(document, "compare")
        report = compare_strategies(
            parameters.sigma0, parameters.n, parameters.T, starts=parameters.starts, seed=seed
        )
        return report.to_table()


class MapsCommand(Command):
    _name = "maps"
    _help = "figure of merit over a (B, T) grid"

    def __call__(self, document: ConfigDocument, seed: int) -> Table:
        parameters = build_maps(document)
        return sensitivity_map(
            parameters.noise,
            parameters.rotation,
            parameters.b_values,
            parameters.t_values,
            alpha=parameters.alpha,
            beta=parameters.beta,
        )


class ProjectionVsShotCommand(Command):
    _name = "projection-vs-shot"
    _help = "sensitivities under the quantum projection limit and under photon shot noise"

    def __call__(self, document: ConfigDocument, seed: int) -> Table:
        parameters = build_projection(document)
        return projection_vs_shot(
            build_scenario(document),
            parameters.n_values,
            shots=parameters.shots,
            sigma=parameters.sigma,
            include_projection=parameters.include_projection,
        )


COMMANDS: list[Command] = [
    IdealQfimCommand(),
    RotatedOptimumCommand(),
    NvSweepCommand(),
    ScalingCommand(),
    CompareCommand(),
    MapsCommand(),
    ProjectionVsShotCommand(),
]


def get_command(name: str) -> Command:
    for command in COMMANDS:
        if command.get_name() == name:
            return command
    raise KeyError(name)


def run_scenario(subcommand: str, document: ConfigDocument, seed: int = 0) -> CommandResult:
    """Runs one subcommand on a parsed configuration.

    Configuration errors give exit status 2, failures of the pipeline or of the model give 3.
    """
    command = get_command(subcommand)
    try:
        table = command(document, seed)
    except ConfigError as e:
        return CommandResult(table=None, exit_status=EXIT_CONFIG, message=repr(e))
    except (PipelineExecutionException, ArithmeticError, ValueError, RuntimeError) as e:
        return CommandResult(table=None, exit_status=EXIT_PIPELINE, message=repr(e))
    return CommandResult(table=table)


def resolve_file_path(file_path: str) -> str:
    """Resolves absolute, relative filepaths and filepaths including ~."""
    expanded = os.path.expanduser(file_path)
    if os.path.isabs(expanded):
        return expanded
    return os.path.join(os.getcwd(), expanded)


def build_argument_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsensim-cli",
        description="Entanglement-assisted vector-field sensing: simulations and Fisher-information tables.",
    )
    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    for command in COMMANDS:
        subparser = subparsers.add_parser(command.get_name(), help=command.get_help())
        subparser.add_argument("--config", help="configuration file; the bundled default when omitted")
        subparser.add_argument("--out", help="output file; standard output when omitted")
        subparser.add_argument("--seed", type=int, default=0)
        subparser.add_argument("--format", choices=FORMATS, default="csv")
        subparser.add_argument(
            "--log-level", default="WARNING", choices=("DEBUG", "INFO", "WARNING", "ERROR")
        )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_argument_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    command = get_command(args.subcommand)

    try:
        if args.config is None:
            text = command.default_config()
        else:
            with open(resolve_file_path(args.config), encoding="utf-8") as file:
                text = file.read()
    except OSError as e:
        print(f"Could not read the configuration: {e}", file=sys.stderr)
        return EXIT_IO

    try:
        document = ConfigParser().parse(text)
    except ConfigError as e:
        print(repr(e), file=sys.stderr)
        return EXIT_CONFIG

    result = run_scenario(args.subcommand, document, args.seed)
    if result.exit_status != EXIT_OK:
        print(result.message, file=sys.stderr)
        return result.exit_status

    try:
        emit_csv(result.table, None if args.out is None else resolve_file_path(args.out), args.format)
    except InvalidTable as e:
        print(repr(e), file=sys.stderr)
        return EXIT_PIPELINE
    except OSError as e:
        print(f"Could not write the output: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
