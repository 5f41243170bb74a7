from __future__ import annotations
from enum import Enum
from typing import Union

import numpy as np
import numpy.typing as npt

from quantum_sensing_simulator.numerics.operators import Operator, electron_operator, expm
from quantum_sensing_simulator.state.quantum_state import (
    ProbeSpec,
    QuantumState,
    apply_unitary,
    prepare_probe,
)
from quantum_sensing_simulator.evolution.hamiltonians import (
    DriveParams,
    VectorField,
    drive_hamiltonian,
    field_hamiltonian,
)
from quantum_sensing_simulator.evolution.sequence import RotationAngles
from quantum_sensing_simulator.readout.readout import MeasuredSignals, bell_probabilities
from .simulation import Simulation
from .performance_metrics import PerformanceMetrics


class Parametrization(Enum):
    FIELD = "field"
    DRIVE = "drive"


class IdealFieldSimulation(Simulation):
    """Perfect sensor qubit evolution with an ideal ancilla, repeated N times with the exact inverse control.

    Every loop applies exp(-iH(θ)t) followed by exp(+iH(θ_c)t), with θ_c frozen at the true parameters,
    and the Bell readout is ideal. Parameters are (B, α, β) for a VectorField or (Ω, Δ, Φ) for DriveParams.
    """

    def __init__(
        self,
        truth: Union[VectorField, DriveParams],
        n_loops: int,
        dwell: float,
        probe: ProbeSpec = ProbeSpec(1.0),
        rotation: RotationAngles = RotationAngles.identity(),
        coupling: float = 1.0,
    ):
        self.truth = truth
        self.parametrization = (
            Parametrization.FIELD if isinstance(truth, VectorField) else Parametrization.DRIVE
        )
        self.parameter_names = (
            ("B", "alpha", "beta")
            if self.parametrization is Parametrization.FIELD
            else ("omega", "delta", "phi")
        )
        self.n_loops = n_loops
        self.dwell = dwell
        self.probe = probe
        self.rotation = rotation
        self.coupling = coupling
        self.performance_metrics = PerformanceMetrics()
        self._probe_state = prepare_probe(probe)
        self._inverse_control = expm(self.hamiltonian(truth.as_array()), 1j * dwell)

    def __repr__(self):
        return f"IdealFieldSimulation({self.truth}, N={self.n_loops}, t={self.dwell})"

    def hamiltonian(self, theta: npt.ArrayLike) -> Operator:
        a, b, c = np.asarray(theta, dtype=float)
        if self.parametrization is Parametrization.FIELD:
            return field_hamiltonian(a, b, c, self.coupling)
        return self.coupling * drive_hamiltonian(DriveParams(a, b, c))

    def _evolve(self, theta: npt.ArrayLike) -> QuantumState:
        single = self._inverse_control @ expm(self.hamiltonian(theta), -1j * self.dwell)
        loop = np.linalg.matrix_power(single, self.n_loops)
        return apply_unitary(self._probe_state, electron_operator(loop))

    def state_map(self, theta: npt.ArrayLike) -> Operator:
        return self.evolve(theta).rho

    def bell_probabilities(self, theta: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """Probabilities in the ideal-model outcome order (Φ+, σz Φ+, σx Φ+, σy Φ+)."""
        return self._evaluate(
            "readout", theta, lambda: np.clip(bell_probabilities(self._evolve(theta), self.rotation), 0.0, 1.0)
        )

    def evolve(self, theta: npt.ArrayLike) -> QuantumState:
        return self._evaluate("evolve", theta, lambda: self._evolve(theta))

    def signals(self, theta: npt.ArrayLike) -> MeasuredSignals:
        p_identity, p_z, p_x, p_y = self.bell_probabilities(theta)
        return MeasuredSignals(p1=p_y, p2=p_x, p3=p_z, p4=p_identity)

    def retained_signals(self, theta: npt.ArrayLike) -> npt.NDArray[np.float64]:
        return self.bell_probabilities(theta)[:3]

    def control_point(self) -> npt.NDArray[np.float64]:
        return self.truth.as_array()

    def get_performance_metrics(self) -> PerformanceMetrics:
        return self.performance_metrics
