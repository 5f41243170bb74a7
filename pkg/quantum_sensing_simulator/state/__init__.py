from .quantum_state import (
    QuantumState,
    ProbeSpec,
    InvalidState,
    InvalidPolarization,
    BELL_PLUS,
    BELL_MINUS,
    basis_vector,
    bloch_polarization,
    population_polarization,
    prepare_probe,
    prepare_ancilla_mixed_probe,
    bell_reference_basis,
    entangler,
    disentangler,
    apply_unitary,
    populations,
    concurrence,
)
