from .hamiltonians import (
    VectorField,
    DriveParams,
    InvalidParameters,
    unit_vector,
    cartesian_hamiltonian,
    field_hamiltonian,
    ideal_hamiltonian,
    drive_hamiltonian,
    hyperfine_hamiltonian,
    two_spin_hamiltonian,
)
from .sequence import (
    RotationAngles,
    Instantaneous,
    FiniteDuration,
    PulseModel,
    SequenceSpec,
    NonpositiveRabi,
    target_unitary,
    control_unitary,
    pi_pulse,
    derive_control,
    frame_compensation_phase,
    compensated_phases,
    nuclear_phase_correction_unitary,
    sensing_loop_unitary,
    rotation_operator,
    rotation_gate,
    scan_compensation_phase,
)
from .ideal_model import (
    ideal_unitary,
    ideal_bell_probabilities,
    rotated_bell_probabilities,
    rotated_bell_probabilities_cartesian,
    zero_field_jacobian,
    ideal_state_map,
    cartesian_state_map,
    spherical_probability_map,
    cartesian_probability_map,
)
from .calibration import PulseCalibration, pulse_calibration, DegenerateSplitting, ZeroCoupling
