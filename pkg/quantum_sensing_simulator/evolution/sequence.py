"""Sequential control: target and control evolutions, π pulses, the N-fold sensing loop and the readout rotation gate."""

from __future__ import annotations
from dataclasses import dataclass, field
import logging
import math

import numpy as np
import scipy.optimize

from quantum_sensing_simulator.numerics.operators import (
    Operator,
    IDENTITY_4,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    distance_to_identity,
    electron_operator,
    expm,
    nuclear_operator,
)
from quantum_sensing_simulator.evolution.hamiltonians import (
    DriveParams,
    InvalidParameters,
    two_spin_hamiltonian,
)

logger = logging.getLogger(__name__)


@dataclass
class NonpositiveRabi(ValueError):
    rabi: float

    def __repr__(self):
        return f"NonpositiveRabi: finite-duration π pulses need a positive Rabi frequency, got {self.rabi}"


@dataclass(frozen=True)
class RotationAngles:
    """Readout rotation exp(-i(πc/2)[cos a σz + sin a cos b σx + sin a sin b σy]) on the sensor."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidParameters(name=name, value=value)

    @classmethod
    def identity(cls) -> RotationAngles:
        return cls(0.0, 0.0, 0.0)

    @classmethod
    def uniform(cls) -> RotationAngles:
        """U_r: rotation by 2π/3 about (1, 1, 1)/√3, which makes the zero-field outcomes uniform."""
        return cls(math.acos(1 / math.sqrt(3)), math.pi / 4, 2 / 3)

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c])

    def half_angle(self) -> float:
        return math.pi * self.c / 2

    def axis(self) -> np.ndarray:
        return np.array(
            [
                math.sin(self.a) * math.cos(self.b),
                math.sin(self.a) * math.sin(self.b),
                math.cos(self.a),
            ]
        )


@dataclass(frozen=True)
class Instantaneous:
    pass


@dataclass(frozen=True)
class FiniteDuration:
    rabi: float

    def __post_init__(self):
        if not self.rabi > 0:
            raise NonpositiveRabi(rabi=self.rabi)

    @property
    def duration(self) -> float:
        return math.pi / self.rabi


PulseModel = Instantaneous | FiniteDuration


@dataclass(frozen=True)
class SequenceSpec:
    """Configuration of the sequential control scheme.

    Attributes:
        n_loops (int): Number N of repetitions of the loop.
        dwell (float): Target evolution time t per loop, in us.
        hyperfine (float): Hyperfine constant A in rad/us.
        control (DriveParams): Control drive applied after the first π pulse.
        pi_pulse_phases (tuple[float, float]): Phases (φ1, φ2) of the two π pulses in rad.
        rotation (RotationAngles): Readout rotation gate.
        pulses (PulseModel): Instantaneous or finite-duration π pulses.
    """

    n_loops: int
    dwell: float
    hyperfine: float
    control: DriveParams
    pi_pulse_phases: tuple[float, float] = (0.0, 0.0)
    rotation: RotationAngles = field(default_factory=RotationAngles.identity)
    pulses: PulseModel = field(default_factory=Instantaneous)

    def __post_init__(self):
        if self.n_loops < 0:
            raise InvalidParameters(name="n_loops", value=self.n_loops)
        if not self.dwell > 0:
            raise InvalidParameters(name="dwell", value=self.dwell)
        if not math.isfinite(self.hyperfine):
            raise InvalidParameters(name="hyperfine", value=self.hyperfine)

    @property
    def sensing_time(self) -> float:
        """Total target evolution time T = N t."""
        return self.n_loops * self.dwell


def target_unitary(p: DriveParams, A: float, t: float) -> Operator:
    """U_t = exp(+iΔσz^e t/2) exp(-i(H(Ω, Δ, Φ) ⊗ I + H_int) t), the frame-change factor first."""
    if t < 0:
        raise InvalidParameters(name="t", value=t)
    frame = expm(electron_operator(SIGMA_Z), 1j * p.delta * t / 2)
    return frame @ expm(two_spin_hamiltonian(p, A), -1j * t)


def control_unitary(p: DriveParams, A: float, t: float) -> Operator:
    """U_c = exp(-i(H(control) ⊗ I + H_int) t)."""
    if t < 0:
        raise InvalidParameters(name="t", value=t)
    return expm(two_spin_hamiltonian(p, A), -1j * t)


def pi_pulse(phase: float, model: PulseModel = Instantaneous(), A: float = 0.0) -> Operator:
    """Electron π pulse about the axis (cos φ, sin φ, 0).

    Args:
        phase (float): The pulse phase φ in rad.
        model (PulseModel, optional): Instantaneous gives exp(-i(π/2)(cos φ σx + sin φ σy)) ⊗ I.
            FiniteDuration evolves under drive_hamiltonian(rabi, 0, -φ) + H_int for π/rabi. Defaults to Instantaneous().
        A (float, optional): Hyperfine constant, only felt by finite-duration pulses. Defaults to 0.0.

    Returns:
        Operator: The 4x4 pulse unitary.
    """
    if isinstance(model, FiniteDuration):
        drive = DriveParams(omega=model.rabi, delta=0.0, phi=-phase)
        return expm(two_spin_hamiltonian(drive, A), -1j * model.duration)
    axis = math.cos(phase) * SIGMA_X + math.sin(phase) * SIGMA_Y
    return electron_operator(-1j * axis)


def derive_control(target: DriveParams) -> DriveParams:
    """Control that undoes the target between two π pulses: Ω_c = Ω_t, Δ_c = Δ_t, Φ_c = π - Φ_t."""
    return DriveParams(omega=target.omega, delta=target.delta, phi=math.pi - target.phi)


def frame_compensation_phase(delta: float, dwell: float) -> float:
    """First π-pulse phase that absorbs the frame-change factor exp(+iΔσz t/2): φ1 = -Δt/2."""
    return -delta * dwell / 2


def compensated_phases(delta: float, dwell: float) -> tuple[float, float]:
    return frame_compensation_phase(delta, dwell), 0.0


def nuclear_phase_correction_unitary(A: float, tau: float) -> Operator:
    """exp(+iAτσz^n/4), the readout nuclear phase adjustment by Aτ/2.

    The π pulses refocus every σz^e term of H_int but not σz^n, which leaves exp(-iAtσz^n/2) per loop.
    """
    return expm(nuclear_operator(SIGMA_Z), 1j * A * tau / 4)


def loop_unitary(
    target_evolution: Operator, control_evolution: Operator, first_pulse: Operator, second_pulse: Operator
) -> Operator:
    return second_pulse @ control_evolution @ first_pulse @ target_evolution


def sensing_loop_unitary(target: DriveParams, spec: SequenceSpec) -> Operator:
    """[U_π(φ2) U_c(t) U_π(φ1) U_t(t)]^N, the identity for N = 0."""
    if spec.n_loops == 0:
        return IDENTITY_4.copy()
    phi_1, phi_2 = spec.pi_pulse_phases
    single = loop_unitary(
        target_unitary(target, spec.hyperfine, spec.dwell),
        control_unitary(spec.control, spec.hyperfine, spec.dwell),
        pi_pulse(phi_1, spec.pulses, spec.hyperfine),
        pi_pulse(phi_2, spec.pulses, spec.hyperfine),
    )
    return np.linalg.matrix_power(single, spec.n_loops)


def rotation_operator(r: RotationAngles) -> Operator:
    """The 2x2 readout rotation acting on the sensor."""
    generator = (
        math.cos(r.a) * SIGMA_Z
        + math.sin(r.a) * math.cos(r.b) * SIGMA_X
        + math.sin(r.a) * math.sin(r.b) * SIGMA_Y
    )
    return expm(generator, -1j * r.half_angle())


def rotation_gate(r: RotationAngles) -> Operator:
    return electron_operator(rotation_operator(r))


def scan_compensation_phase(
    target: DriveParams, dwell: float, A: float = 0.0, samples: int = 720
) -> float:
    """Finds the first π-pulse phase that restores a single loop to the identity by scanning [0, 2π).

    The control is derive_control(target), φ2 = 0, and the nuclear phase of the loop is removed before
    measuring the distance to identity. The best grid point is refined with a bounded scalar search.

    Returns:
        float: The phase in [0, 2π) that minimizes the distance to identity.
    """
    control = derive_control(target)
    target_evolution = target_unitary(target, A, dwell)
    control_evolution = control_unitary(control, A, dwell)
    correction = nuclear_phase_correction_unitary(A, 2 * dwell)

    def distance(phase: float) -> float:
        u = loop_unitary(target_evolution, control_evolution, pi_pulse(phase), pi_pulse(0.0))
        return distance_to_identity(correction @ u)

    grid = np.linspace(0, 2 * np.pi, samples, endpoint=False)
    values = [distance(phase) for phase in grid]
    best = grid[int(np.argmin(values))]
    width = 2 * np.pi / samples
    refined = scipy.optimize.minimize_scalar(
        distance, bounds=(best - width, best + width), method="bounded", options={"xatol": 1e-12}
    )
    logger.debug("compensation phase scan: grid %.6f, refined %.12f", best, refined.x)
    return float(np.mod(refined.x, 2 * np.pi))
