"""Turns a parsed configuration into a Scenario and the parameter records of the CLI subcommands."""

from __future__ import annotations
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, Optional
import math

import numpy as np
import numpy.typing as npt

from quantum_sensing_simulator.state.quantum_state import ProbeSpec
from quantum_sensing_simulator.evolution.hamiltonians import DriveParams, VectorField
from quantum_sensing_simulator.evolution.sequence import (
    FiniteDuration,
    Instantaneous,
    PulseModel,
    RotationAngles,
    SequenceSpec,
    compensated_phases,
    derive_control,
)
from quantum_sensing_simulator.readout.readout import SpamModel
from quantum_sensing_simulator.fisher import bounds
from quantum_sensing_simulator.fisher.noise import Averaged, NoiseSpec, QuantumProjection, SingleShot
from quantum_sensing_simulator.experiments.scenario import ModelKind, Scenario, mhz
from quantum_sensing_simulator.experiments.sweeps import SweepAxis
from quantum_sensing_simulator.experiments.maps import default_map_grid
from quantum_sensing_simulator.settings.settings import Settings
from .config_exceptions import ConfigError, ConfigUnitError, ConfigValueError
from .config_parser import ConfigDocument
from .schema import AXIS_DIMENSIONS, UNITS


@contextmanager
def _rejected_as(document: ConfigDocument, section: str, key: str) -> Iterator[None]:
    """Reports a model error as a ConfigValueError at the line that set `section.key`."""
    try:
        yield
    except ConfigError:
        raise
    except ValueError as e:
        entry = document.entry(section, key)
        raise ConfigValueError(
            line_number=entry.line_number if entry else 0,
            line=entry.line if entry else "",
            key=f"{section}.{key}",
            reason=repr(e),
        )


def _missing(section: str, key: str, reason: str) -> ConfigValueError:
    return ConfigValueError(line_number=0, line="", key=f"{section}.{key}", reason=reason)


def build_rotation(document: ConfigDocument, section: str = "sequence.rotation") -> RotationAngles:
    """Explicit angles a, b, c override the preset; all three must be given together."""
    given = [key for key in ("a", "b", "c") if document.entry(section, key) is not None]
    if given:
        if len(given) < 3:
            missing = next(key for key in ("a", "b", "c") if key not in given)
            raise _missing(section, missing, "a, b and c must be set together")
        with _rejected_as(document, section, "c"):
            return RotationAngles(
                document.get(section, "a"), document.get(section, "b"), document.get(section, "c")
            )
    rotation = _preset_rotation(document.get(section, "preset", "identity"))
    return rotation if rotation is not None else RotationAngles.identity()


def _preset_rotation(preset: str) -> Optional[RotationAngles]:
    match preset:
        case "none":
            return None
        case "identity":
            return RotationAngles.identity()
        case "uniform":
            return RotationAngles.uniform()
        case "optimal":
            return bounds.optimal_rotation_angles()
    raise ValueError(preset)


def build_noise(document: ConfigDocument) -> NoiseSpec:
    settings = Settings().get()
    kind = document.get("noise", "kind", "averaged")
    key = {"averaged": "sigma", "projection": "shots", "single_shot": "epsilon"}[kind]
    with _rejected_as(document, "noise", key):
        match kind:
            case "projection":
                return QuantumProjection(n=document.get("noise", "shots", settings["projection_shots"]))
            case "single_shot":
                if document.entry("noise", "epsilon") is None:
                    raise _missing("noise", "epsilon", "single-shot noise needs a confusion rate")
                return SingleShot(
                    n=document.get("noise", "shots", 1), epsilon=document.get("noise", "epsilon")
                )
            case _:
                return Averaged(
                    sigma=document.get("noise", "sigma", settings["averaged_sigma"]),
                    include_projection=document.get("noise", "include_projection", False),
                    n=document.get("noise", "shots", 1),
                )


def _build_pulses(document: ConfigDocument) -> PulseModel:
    if document.get("sequence", "pulses", "instantaneous") == "instantaneous":
        return Instantaneous()
    if document.entry("sequence", "pulse_rabi") is None:
        raise _missing("sequence", "pulse_rabi", "finite-duration pulses need a Rabi frequency")
    with _rejected_as(document, "sequence", "pulse_rabi"):
        return FiniteDuration(rabi=document.get("sequence", "pulse_rabi"))


def build_scenario(document: ConfigDocument) -> Scenario:
    """Builds the experiment of a configuration, filling unset keys from the settings.

    Args:
        document (ConfigDocument): The parsed configuration.

    Raises:
        ConfigValueError: If a value is rejected by the model, or a required key is missing.

    Returns:
        Scenario: The configured experiment.
    """
    settings = Settings().get()
    model = ModelKind(document.get("model", "kind", "nv"))

    # the ideal model reads out a pure Bell probe unless told otherwise
    default_polarization = settings["polarization"] if model is ModelKind.NV_DRIVE else 1.0
    with _rejected_as(document, "probe", "polarization"):
        probe = ProbeSpec(document.get("probe", "polarization", default_polarization))

    with _rejected_as(document, "control", "omega"):
        control = DriveParams(
            omega=document.get("control", "omega", mhz(settings["control_omega_mhz"])),
            delta=document.get("control", "delta", mhz(settings["control_delta_mhz"])),
            phi=document.get("control", "phi", math.radians(settings["control_phi_deg"])),
        )

    dwell = document.get("sequence", "dwell", settings["dwell_ns"] / 1000)
    if document.get("sequence", "compensate", True):
        first, second = compensated_phases(control.delta, dwell)
    else:
        first, second = 0.0, 0.0
    phases = (document.get("sequence", "phi_1", first), document.get("sequence", "phi_2", second))

    with _rejected_as(document, "sequence", "n_loops"):
        sequence = SequenceSpec(
            n_loops=document.get("sequence", "n_loops", 1),
            dwell=dwell,
            hyperfine=document.get("sequence", "hyperfine", mhz(settings["hyperfine_mhz"])),
            control=control,
            pi_pulse_phases=phases,
            rotation=build_rotation(document),
            pulses=_build_pulses(document),
        )

    if model is ModelKind.NV_DRIVE:
        default = derive_control(control)
        with _rejected_as(document, "target", "omega"):
            target = DriveParams(
                omega=document.get("target", "omega", default.omega),
                delta=document.get("target", "delta", default.delta),
                phi=document.get("target", "phi", default.phi),
            )
    else:
        for key in ("B", "alpha", "beta"):
            if document.entry("target", key) is None:
                raise _missing("target", key, "the ideal model needs the field (B, alpha, beta)")
        with _rejected_as(document, "target", "B"):
            target = VectorField(
                document.get("target", "B"), document.get("target", "alpha"), document.get("target", "beta")
            )

    spam = None
    if model is ModelKind.NV_DRIVE and document.get("spam", "enabled", True):
        with _rejected_as(document, "spam", "zeta"):
            spam = SpamModel(
                polarization=probe.polarization_population,
                zeta=document.get("spam", "zeta", settings["spam_zeta"]),
                gamma=document.get("spam", "gamma", settings["spam_gamma"]),
                eta=document.get("spam", "eta", settings["spam_eta"]),
            )

    with _rejected_as(document, "model", "kind"):
        return Scenario(
            model=model, probe=probe, sequence=sequence, target=target, spam=spam, noise=build_noise(document)
        )


@dataclass(frozen=True)
class SweepParameters:
    axis: SweepAxis
    grid: npt.NDArray[np.float64]


def build_sweep(document: ConfigDocument) -> SweepParameters:
    """The sweep grid carries the unit of its axis: a frequency for omega and delta, an angle for phi, none for rotation."""
    axis = SweepAxis(document.get("sweep", "axis", "omega"))
    entry = document.entry("sweep", "grid")
    if entry is None:
        raise _missing("sweep", "grid", "a sweep needs a grid")
    if not entry.value:
        raise ConfigValueError(line_number=entry.line_number, line=entry.line, key="sweep.grid", reason="the grid is empty")
    dimension = AXIS_DIMENSIONS[axis.value]
    if dimension is None:
        if entry.unit:
            raise ConfigUnitError(
                line_number=entry.line_number, line=entry.line, key="grid", unit=entry.unit, expected="no unit"
            )
        factor = 1.0
    else:
        unit_dimension, factor = UNITS.get(entry.unit, (None, 1.0))
        if unit_dimension is not dimension:
            raise ConfigUnitError(
                line_number=entry.line_number, line=entry.line, key="grid", unit=entry.unit, expected=dimension.value
            )
    return SweepParameters(axis=axis, grid=np.asarray(entry.value, dtype=float) * factor)


def build_scaling(document: ConfigDocument) -> list[int]:
    n_values = document.get("scaling", "n_values", list(Settings().get()["scaling_n_values"]))
    if not n_values:
        raise _missing("scaling", "n_values", "at least one loop count is needed")
    return n_values


@dataclass(frozen=True)
class OptimizeParameters:
    sigma0: float
    n: int
    T: float
    starts: int


def build_optimize(document: ConfigDocument, section: str = "optimize") -> OptimizeParameters:
    """Reads the `optimize` or the `compare` section."""
    settings = Settings().get()
    parameters = OptimizeParameters(
        sigma0=document.get(section, "sigma0", settings["averaged_sigma"]),
        n=document.get(section, "n", 1),
        T=document.get(section, "T", settings["dwell_ns"] / 1000),
        starts=document.get(section, "starts", settings["optimizer_starts"]),
    )
    for key in ("sigma0", "n", "T", "starts"):
        if not getattr(parameters, key) > 0:
            entry = document.entry(section, key)
            raise ConfigValueError(
                line_number=entry.line_number if entry else 0,
                line=entry.line if entry else "",
                key=f"{section}.{key}",
                reason="must be positive",
            )
    return parameters


@dataclass(frozen=True)
class MapParameters:
    noise: NoiseSpec
    rotation: Optional[RotationAngles]
    b_values: npt.NDArray[np.float64]
    t_values: npt.NDArray[np.float64]
    alpha: float
    beta: float


def build_maps(document: ConfigDocument) -> MapParameters:
    """Grids not given explicitly come from default_map_grid(grid_size, t_max)."""
    settings = Settings().get()
    default_b, default_t = default_map_grid(
        document.get("maps", "grid_size", settings["map_grid_size"]), document.get("maps", "t_max", 1.0)
    )
    return MapParameters(
        noise=build_noise(document),
        rotation=_preset_rotation(document.get("maps", "rotation", "none")),
        b_values=np.asarray(document.get("maps", "b_values", default_b), dtype=float),
        t_values=np.asarray(document.get("maps", "t_values", default_t), dtype=float),
        alpha=document.get("maps", "alpha", settings["map_alpha"]),
        beta=document.get("maps", "beta", settings["map_beta"]),
    )


@dataclass(frozen=True)
class IdealParameters:
    table: str
    points: list[tuple[VectorField, float]]
    polarizations: list[float]
    mixed_alpha: float
    mixed_beta: float
    mixed_T: float


def random_ideal_points(count: int, seed: int) -> list[tuple[VectorField, float]]:
    """Points with B T in [0.1, 2.75] and α away from the poles, where all three QFIM entries are well resolved."""
    rng = np.random.default_rng(seed)
    points = []
    for _ in range(count):
        B = rng.uniform(0.5, 2.5)
        alpha = rng.uniform(0.3, math.pi - 0.3)
        beta = rng.uniform(-math.pi, math.pi)
        T = rng.uniform(0.2, 1.1)
        points.append((VectorField(B, alpha, beta), T))
    return points


def build_ideal(document: ConfigDocument, seed: int = 0) -> IdealParameters:
    """Explicit B, alpha, beta and T lists are zipped into points; without them `random_points` points are drawn."""
    lists = {key: document.get("ideal", key) for key in ("B", "alpha", "beta", "T")}
    if any(values is not None for values in lists.values()):
        if any(values is None for values in lists.values()) or len({len(v) for v in lists.values()}) != 1:
            raise _missing("ideal", "B", "B, alpha, beta and T must be lists of the same length")
        with _rejected_as(document, "ideal", "B"):
            points = [
                (VectorField(B, alpha, beta), T)
                for B, alpha, beta, T in zip(lists["B"], lists["alpha"], lists["beta"], lists["T"])
            ]
    else:
        count = document.get("ideal", "random_points", 20)
        if count < 1:
            raise _missing("ideal", "random_points", "must be positive")
        points = random_ideal_points(count, seed)
    return IdealParameters(
        table=document.get("ideal", "table", "qfim"),
        points=points,
        polarizations=document.get("ideal", "polarizations", [0.0, 0.5, 0.7, 1.0]),
        mixed_alpha=document.get("ideal", "mixed_alpha", math.pi / 4),
        mixed_beta=document.get("ideal", "mixed_beta", math.pi / 3),
        mixed_T=document.get("ideal", "mixed_T", 1.0),
    )


@dataclass(frozen=True)
class ProjectionParameters:
    n_values: list[int]
    shots: int
    sigma: float
    include_projection: bool


def build_projection(document: ConfigDocument) -> ProjectionParameters:
    settings = Settings().get()
    parameters = ProjectionParameters(
        n_values=document.get("projection", "n_values", list(settings["scaling_n_values"])),
        shots=document.get("projection", "shots", settings["projection_shots"]),
        sigma=document.get("projection", "sigma", settings["averaged_sigma"]),
        include_projection=document.get("projection", "include_projection", False),
    )
    if not parameters.n_values:
        raise _missing("projection", "n_values", "at least one loop count is needed")
    return parameters
