from __future__ import annotations
from typing import Optional

import numpy as np
import numpy.typing as npt

from quantum_sensing_simulator.numerics.operators import Operator
from quantum_sensing_simulator.state.quantum_state import (
    ProbeSpec,
    QuantumState,
    apply_unitary,
    prepare_probe,
)
from quantum_sensing_simulator.evolution.hamiltonians import DriveParams
from quantum_sensing_simulator.evolution.sequence import (
    SequenceSpec,
    control_unitary,
    derive_control,
    loop_unitary,
    nuclear_phase_correction_unitary,
    pi_pulse,
    target_unitary,
)
from quantum_sensing_simulator.readout.readout import (
    MeasuredSignals,
    SpamModel,
    measure_bell,
    spam_apply,
)
from .simulation import Simulation
from .performance_metrics import PerformanceMetrics


class NvDriveSimulation(Simulation):
    """Electron-nuclear pair under an unknown drive (Ω, Δ, Φ), sensed with the π-pulse decoupled sequential control.

    The pipeline is probe -> N loops -> nuclear phase correction -> rotation gate -> disentangler -> populations -> SPAM.
    """

    parameter_names = ("omega", "delta", "phi")

    def __init__(
        self,
        sequence: SequenceSpec,
        probe: ProbeSpec = ProbeSpec(),
        spam: Optional[SpamModel] = None,
    ):
        self.sequence = sequence
        self.probe = probe
        self.spam = spam
        self.performance_metrics = PerformanceMetrics()
        self._probe_state = prepare_probe(probe)
        # everything that does not depend on the target is built once
        phi_1, phi_2 = sequence.pi_pulse_phases
        self._control_evolution = control_unitary(sequence.control, sequence.hyperfine, sequence.dwell)
        self._first_pulse = pi_pulse(phi_1, sequence.pulses, sequence.hyperfine)
        self._second_pulse = pi_pulse(phi_2, sequence.pulses, sequence.hyperfine)
        self._correction = nuclear_phase_correction_unitary(
            sequence.hyperfine, 2 * sequence.sensing_time
        )

    def __repr__(self):
        return (
            f"NvDriveSimulation(N={self.sequence.n_loops}, t={self.sequence.dwell}, "
            f"P={self.probe.polarization_population}, spam={self.spam is not None})"
        )

    def loop(self, target: DriveParams) -> Operator:
        if self.sequence.n_loops == 0:
            return np.eye(4, dtype=complex)
        single = loop_unitary(
            target_unitary(target, self.sequence.hyperfine, self.sequence.dwell),
            self._control_evolution,
            self._first_pulse,
            self._second_pulse,
        )
        return self._correction @ np.linalg.matrix_power(single, self.sequence.n_loops)

    def _evolve(self, theta: npt.ArrayLike) -> QuantumState:
        omega, delta, phi = np.asarray(theta, dtype=float)
        return apply_unitary(self._probe_state, self.loop(DriveParams(omega, delta, phi)))

    def _readout(self, state: QuantumState) -> MeasuredSignals:
        signals = measure_bell(state, self.sequence.rotation)
        return signals if self.spam is None else spam_apply(signals, self.spam)

    def evolve(self, theta: npt.ArrayLike) -> QuantumState:
        return self._evaluate("evolve", theta, lambda: self._evolve(theta))

    def signals(self, theta: npt.ArrayLike) -> MeasuredSignals:
        return self._evaluate("readout", theta, lambda: self._readout(self._evolve(theta)))

    def retained_signals(self, theta: npt.ArrayLike) -> npt.NDArray[np.float64]:
        return self.signals(theta).retained()

    def control_point(self) -> npt.NDArray[np.float64]:
        return derive_control(self.sequence.control).as_array()

    def get_performance_metrics(self) -> PerformanceMetrics:
        return self.performance_metrics
