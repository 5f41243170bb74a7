from __future__ import annotations
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Union
import math

from quantum_sensing_simulator.state.quantum_state import ProbeSpec
from quantum_sensing_simulator.evolution.hamiltonians import DriveParams, VectorField
from quantum_sensing_simulator.evolution.sequence import (
    RotationAngles,
    SequenceSpec,
    compensated_phases,
    derive_control,
)
from quantum_sensing_simulator.readout.readout import SpamModel
from quantum_sensing_simulator.fisher.noise import Averaged, NoiseSpec
from quantum_sensing_simulator.simulation import (
    IdealFieldSimulation,
    NvDriveSimulation,
    Simulation,
)
from quantum_sensing_simulator.settings.settings import Settings


@dataclass
class InvalidScenario(ValueError):
    reason: str

    def __repr__(self):
        return f"InvalidScenario: {self.reason}"


class ModelKind(Enum):
    IDEAL_VECTOR_FIELD = "ideal"
    NV_DRIVE = "nv"


def mhz(value: float) -> float:
    """(2π) x value MHz in rad/us."""
    return 2 * math.pi * value


@dataclass(frozen=True)
class Scenario:
    """One experiment configuration.

    The target is the point around which sweeps vary one parameter; for the NV model it defaults to the control point.
    """

    model: ModelKind
    probe: ProbeSpec
    sequence: SequenceSpec
    target: Union[DriveParams, VectorField]
    spam: Optional[SpamModel] = None
    noise: NoiseSpec = field(default_factory=Averaged)

    def __post_init__(self):
        if self.spam is not None and self.model is not ModelKind.NV_DRIVE:
            raise InvalidScenario(reason="SPAM errors are only modeled for the NV drive model")
        if self.spam is not None and self.spam.polarization != self.probe.polarization_population:
            raise InvalidScenario(
                reason=f"SPAM polarization {self.spam.polarization} differs from the probe polarization "
                f"{self.probe.polarization_population}"
            )
        if self.model is ModelKind.NV_DRIVE and not isinstance(self.target, DriveParams):
            raise InvalidScenario(reason="the NV drive model needs a DriveParams target")

    def with_loops(self, n_loops: int) -> Scenario:
        return replace(self, sequence=replace(self.sequence, n_loops=n_loops))

    def with_noise(self, noise: NoiseSpec) -> Scenario:
        return replace(self, noise=noise)

    def with_rotation(self, rotation: RotationAngles) -> Scenario:
        return replace(self, sequence=replace(self.sequence, rotation=rotation))

    def with_polarization(self, polarization: float) -> Scenario:
        spam = None if self.spam is None else replace(self.spam, polarization=polarization)
        return replace(self, probe=ProbeSpec(polarization), spam=spam)


def build_simulation(scenario: Scenario) -> Simulation:
    if scenario.model is ModelKind.NV_DRIVE:
        return NvDriveSimulation(sequence=scenario.sequence, probe=scenario.probe, spam=scenario.spam)
    return IdealFieldSimulation(
        truth=scenario.target,
        n_loops=scenario.sequence.n_loops,
        dwell=scenario.sequence.dwell,
        probe=scenario.probe,
        rotation=scenario.sequence.rotation,
    )


def nv_scenario(
    n_loops: int = 1,
    polarization: float = Settings().get()["polarization"],
    with_spam: bool = True,
    rotation: RotationAngles = RotationAngles.identity(),
    noise: Optional[NoiseSpec] = None,
    compensate: bool = True,
) -> Scenario:
    """The NV drive experiment with the default control (Ω_c, Δ_c, Φ_c), dwell, hyperfine constant and SPAM rates.

    Args:
        n_loops (int, optional): Number of loops. Defaults to 1.
        polarization (float, optional): Probe polarization P. Defaults to the polarization setting.
        with_spam (bool, optional): Whether to apply the leakage model. Defaults to True.
        rotation (RotationAngles, optional): Readout rotation. Defaults to the identity.
        noise (Optional[NoiseSpec], optional): Noise model. Defaults to Averaged().
        compensate (bool, optional): Whether the first π pulse absorbs the frame-change factor. Defaults to True.

    Returns:
        Scenario: The scenario, targeting the control point.
    """
    settings = Settings().get()
    control = DriveParams(
        omega=mhz(settings["control_omega_mhz"]),
        delta=mhz(settings["control_delta_mhz"]),
        phi=math.radians(settings["control_phi_deg"]),
    )
    dwell = settings["dwell_ns"] / 1000
    sequence = SequenceSpec(
        n_loops=n_loops,
        dwell=dwell,
        hyperfine=mhz(settings["hyperfine_mhz"]),
        control=control,
        pi_pulse_phases=compensated_phases(control.delta, dwell) if compensate else (0.0, 0.0),
        rotation=rotation,
    )
    return Scenario(
        model=ModelKind.NV_DRIVE,
        probe=ProbeSpec(polarization),
        sequence=sequence,
        target=derive_control(control),
        spam=SpamModel(polarization=polarization) if with_spam else None,
        noise=noise if noise is not None else Averaged(),
    )


def sweep_scenario(n_loops: int = 1) -> Scenario:
    """Signal sweeps: default control and SPAM, unrotated readout."""
    return nv_scenario(n_loops=n_loops)


def scaling_scenario(
    n_loops: int = 1, polarization: float = 1.0, with_spam: bool = False
) -> Scenario:
    """Sensitivity scaling: the uniform rotation U_r before the readout."""
    return nv_scenario(
        n_loops=n_loops,
        polarization=polarization,
        with_spam=with_spam,
        rotation=RotationAngles.uniform(),
    )
