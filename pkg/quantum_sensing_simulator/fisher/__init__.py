from .information import (
    FisherMatrices,
    DegenerateState,
    InvalidFisherMatrix,
    jacobian_fd,
    qfim_numeric,
    cfim,
    fisher_matrices,
)
from .noise import (
    NoiseSpec,
    QuantumProjection,
    SingleShot,
    Averaged,
    InvalidNoiseSpec,
    noise_covariance,
    multinomial_covariance,
    sample_covariance,
)
from .propagation import (
    SingularJacobian,
    InvalidWeight,
    WeightKind,
    WeightMatrix,
    condition_number,
    propagate_errors,
    figure_of_merit,
    spherical_to_cartesian_jacobian,
    cartesian_covariance,
    mixed_probe_scalar_qfi,
    single_qubit_scalar_qfi,
)
from . import bounds
