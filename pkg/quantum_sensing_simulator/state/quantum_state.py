from __future__ import annotations
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from quantum_sensing_simulator.numerics.operators import (
    Operator,
    IDENTITY_2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    check_unitary,
    dagger,
    electron_operator,
    expm,
    hermiticity_deviation,
    kron,
)
from quantum_sensing_simulator.settings.settings import Settings

# Computational labeling (electron ⊗ nuclear, sigma_z eigenvalue +1 on the first state of each factor):
# index 0 = |0,+1>, index 1 = |0,0>, index 2 = |-1,+1>, index 3 = |-1,0>
INDEX_0_PLUS1 = 0
INDEX_0_0 = 1
INDEX_M1_PLUS1 = 2
INDEX_M1_0 = 3

# populations p1..p4 in the readout order |-1,+1>, |-1,0>, |0,0>, |0,+1>
READOUT_ORDER = (INDEX_M1_PLUS1, INDEX_M1_0, INDEX_0_0, INDEX_0_PLUS1)


@dataclass
class InvalidState(ValueError):
    reason: str
    value: float

    def __repr__(self):
        return f"InvalidState: density matrix rejected, {self.reason} ({self.value:.3e})"


@dataclass
class InvalidPolarization(ValueError):
    polarization: float

    def __repr__(self):
        return f"InvalidPolarization: {self.polarization} is outside the allowed range"


def basis_vector(index: int) -> npt.NDArray[np.complex128]:
    vector = np.zeros(4, dtype=complex)
    vector[index] = 1
    return vector


BELL_PLUS = (basis_vector(INDEX_0_0) + basis_vector(INDEX_M1_PLUS1)) / np.sqrt(2)
BELL_MINUS = (basis_vector(INDEX_0_0) - basis_vector(INDEX_M1_PLUS1)) / np.sqrt(2)


def projector(vector: npt.NDArray[np.complex128]) -> Operator:
    return np.outer(vector, vector.conj())


@dataclass(eq=False)
class QuantumState:
    """A two-qubit density matrix (electron ⊗ nuclear).

    The constructor checks the trace, Hermiticity and positivity invariants.
    """

    rho: Operator

    def __post_init__(self):
        self.rho = np.asarray(self.rho, dtype=complex)
        if self.rho.shape != (4, 4):
            raise InvalidState(reason="shape is not 4x4", value=float(self.rho.size))
        trace_error = abs(np.trace(self.rho) - 1)
        if trace_error > Settings().get()["trace_tolerance"]:
            raise InvalidState(reason="trace differs from 1", value=trace_error)
        hermitian_error = hermiticity_deviation(self.rho)
        if hermitian_error > Settings().get()["hermitian_tolerance"]:
            raise InvalidState(reason="not Hermitian", value=hermitian_error)
        smallest = float(np.min(np.linalg.eigvalsh((self.rho + dagger(self.rho)) / 2)))
        if smallest < -Settings().get()["positivity_tolerance"]:
            raise InvalidState(reason="negative eigenvalue", value=smallest)

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    @classmethod
    def from_vector(cls, vector: npt.ArrayLike) -> QuantumState:
        vector = np.asarray(vector, dtype=complex)
        return cls(projector(vector / np.linalg.norm(vector)))


@dataclass(frozen=True)
class ProbeSpec:
    """Probe preparation with ancilla polarization P in the population convention (mixture weights P and 1-P)."""

    polarization_population: float = Settings().get()["polarization"]

    def __post_init__(self):
        if not 0 <= self.polarization_population <= 1:
            raise InvalidPolarization(polarization=self.polarization_population)

    @property
    def bloch(self) -> float:
        return bloch_polarization(self.polarization_population)


def bloch_polarization(population: float) -> float:
    """Converts the population convention P into the Bloch convention 2P - 1."""
    if not 0 <= population <= 1:
        raise InvalidPolarization(polarization=population)
    return 2 * population - 1


def population_polarization(bloch: float) -> float:
    """Converts the Bloch convention back into the population convention (1 + P_bloch) / 2."""
    if not -1 <= bloch <= 1:
        raise InvalidPolarization(polarization=bloch)
    return (1 + bloch) / 2


def prepare_probe(spec: ProbeSpec) -> QuantumState:
    """Returns P|Φ+><Φ+| + (1 - P)|Φ-><Φ-|."""
    p = spec.polarization_population
    return QuantumState(p * projector(BELL_PLUS) + (1 - p) * projector(BELL_MINUS))


def prepare_ancilla_mixed_probe(p_bloch: float) -> QuantumState:
    """Hadamard on the sensor and CNOT onto the ancilla, applied to |0><0| ⊗ (I + P_bloch σz)/2.

    Args:
        p_bloch (float): Ancilla polarization in the Bloch convention.

    Returns:
        QuantumState: ((1 + P)/2)|Φ+_tb><Φ+_tb| + ((1 - P)/2)(σx ⊗ I)|Φ+_tb><Φ+_tb|(σx ⊗ I) with |Φ+_tb> = (e0 + e3)/√2.
    """
    if not -1 <= p_bloch <= 1:
        raise InvalidPolarization(polarization=p_bloch)
    sensor = np.array([[1, 0], [0, 0]], dtype=complex)
    ancilla = (IDENTITY_2 + p_bloch * SIGMA_Z) / 2
    hadamard = (SIGMA_X + SIGMA_Z) / np.sqrt(2)
    cnot = np.eye(4, dtype=complex)
    cnot[2:, 2:] = SIGMA_X
    u = cnot @ electron_operator(hadamard)
    rho = u @ kron(sensor, ancilla) @ dagger(u)
    return QuantumState(rho)


def bell_reference_basis() -> list[npt.NDArray[np.complex128]]:
    """Bell basis relative to the probe, in the ideal-model outcome order (Φ+, σz Φ+, σx Φ+, σy Φ+), Pauli on the sensor."""
    return [
        BELL_PLUS,
        electron_operator(SIGMA_Z) @ BELL_PLUS,
        electron_operator(SIGMA_X) @ BELL_PLUS,
        electron_operator(SIGMA_Y) @ BELL_PLUS,
    ]


def entangler() -> Operator:
    """Nuclear π/2 rotation exp(+iπσy/4) followed by an electron π pulse exp(+iπσy/2) selective on nuclear |+1>.

    Maps |0,+1> to -|Φ+> and |0,0> to |Φ->.
    """
    nuclear_half_pi = kron(IDENTITY_2, expm(SIGMA_Y, 1j * np.pi / 4))
    nuclear_plus1 = np.diag([1, 0]).astype(complex)
    nuclear_zero = np.diag([0, 1]).astype(complex)
    selective_pi = kron(expm(SIGMA_Y, 1j * np.pi / 2), nuclear_plus1) + kron(
        IDENTITY_2, nuclear_zero
    )
    return selective_pi @ nuclear_half_pi


def disentangler() -> Operator:
    return dagger(entangler())


def apply_unitary(state: QuantumState, u: Operator) -> QuantumState:
    """Returns u ρ u^dagger.

    Raises:
        NotUnitary: If u is not unitary within the unitarity tolerance.
    """
    check_unitary(u)
    return QuantumState(u @ state.rho @ dagger(u))


def populations(state: QuantumState) -> npt.NDArray[np.float64]:
    """Returns (p1, p2, p3, p4) = populations of |-1,+1>, |-1,0>, |0,0>, |0,+1>."""
    diagonal = np.real(np.diag(state.rho))
    return np.array([diagonal[index] for index in READOUT_ORDER])


def concurrence(state: QuantumState) -> float:
    """Wootters concurrence.

    Bell-diagonal states (every probe built here) use the exact closed form max(0, 2 w_max - 1) over the Bell weights w.
    Other states fall back to the spin-flip eigenvalue formula.
    """
    basis = np.column_stack(
        [
            (basis_vector(0) + basis_vector(3)) / np.sqrt(2),
            (basis_vector(0) - basis_vector(3)) / np.sqrt(2),
            BELL_PLUS,
            BELL_MINUS,
        ]
    )
    in_bell_basis = dagger(basis) @ state.rho @ basis
    weights = np.real(np.diag(in_bell_basis))
    off_diagonal = in_bell_basis - np.diag(np.diag(in_bell_basis))
    if np.max(np.abs(off_diagonal)) < Settings().get()["hermitian_tolerance"]:
        return float(max(0.0, 2 * np.max(weights) - 1))
    spin_flip = kron(SIGMA_Y, SIGMA_Y)
    r = state.rho @ spin_flip @ state.rho.conj() @ spin_flip
    roots = np.sqrt(np.clip(np.sort(np.real(np.linalg.eigvals(r)))[::-1], 0, None))
    return float(max(0.0, roots[0] - roots[1] - roots[2] - roots[3]))
