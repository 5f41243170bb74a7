"""Error propagation from signal covariances to parameter covariances, and the scalar figures of merit."""

from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
import logging
import math

import numpy as np
import numpy.typing as npt

from quantum_sensing_simulator.evolution.hamiltonians import VectorField
from quantum_sensing_simulator.state.quantum_state import InvalidPolarization
from quantum_sensing_simulator.settings.settings import Settings

logger = logging.getLogger(__name__)

Matrix = npt.NDArray[np.float64]


@dataclass
class SingularJacobian(ArithmeticError):
    condition_number: float
    limit: float

    def __repr__(self):
        return (
            f"SingularJacobian: the Jacobian of the signals is singular "
            f"(condition number {self.condition_number:.3e} exceeds {self.limit:.1e})"
        )


@dataclass
class InvalidWeight(ValueError):
    diagonal: tuple[float, ...]

    def __repr__(self):
        return f"InvalidWeight: weight diagonal {self.diagonal} must be positive"


class WeightKind(Enum):
    IDENTITY = "identity"
    ADAPTED = "adapted"


@dataclass(frozen=True)
class WeightMatrix:
    """Diagonal weight W of a scalar Fisher information Tr[QFIM W]."""

    w: Matrix

    def __post_init__(self):
        diagonal = np.diag(self.w)
        if np.any(diagonal <= 0) or np.any(self.w != np.diag(diagonal)):
            raise InvalidWeight(diagonal=tuple(float(value) for value in diagonal))

    @classmethod
    def identity(cls) -> WeightMatrix:
        return cls(np.eye(3))

    @classmethod
    def adapted(cls, f: VectorField) -> WeightMatrix:
        """W_a = diag(1, 1/B², 1/(B² sin²α)), the weight that turns spherical information into Cartesian units."""
        return cls(np.diag([1.0, 1 / f.B**2, 1 / (f.B**2 * math.sin(f.alpha) ** 2)]))

    @classmethod
    def of_kind(cls, kind: WeightKind, f: VectorField) -> WeightMatrix:
        return cls.adapted(f) if kind is WeightKind.ADAPTED else cls.identity()


def condition_number(jacobian: Matrix) -> float:
    """2-norm condition number after scaling every column to unit length.

    The scaling removes the dependence on parameter units. A zero or non-finite column gives infinity.
    """
    jacobian = np.asarray(jacobian, dtype=float)
    if not np.all(np.isfinite(jacobian)):
        return math.inf
    norms = np.linalg.norm(jacobian, axis=0)
    if np.any(norms == 0):
        return math.inf
    return float(np.linalg.cond(jacobian / norms))


def propagate_errors(
    jacobian: Matrix,
    sigma_p: Matrix,
    limit: float = Settings().get()["singular_condition_limit"],
) -> Matrix:
    """Σ_θ = J⁻¹ Σ_p J⁻ᵀ.

    The limit applies to the column-equilibrated condition number, so it sits well below the 1e12 a raw
    2-norm test would use: once the unit scale is removed, finite-difference noise keeps an unentangled
    probe (P = 0.5) between roughly 1e11 and 1e17, while P = 0.51 stays near 30.

    Args:
        jacobian (Matrix): Jacobian of the retained signals, 3x3.
        sigma_p (Matrix): Covariance of the retained signals.
        limit (float, optional): Largest accepted equilibrated condition number. Defaults to the
            singular_condition_limit setting (1e6).

    Raises:
        SingularJacobian: If the column-equilibrated condition number of J exceeds the limit.
    """
    cond = condition_number(jacobian)
    logger.debug("jacobian condition number %.3e", cond)
    if not cond <= limit:
        raise SingularJacobian(condition_number=cond, limit=limit)
    inverse = np.linalg.inv(jacobian)
    sigma_theta = inverse @ sigma_p @ inverse.T
    return (sigma_theta + sigma_theta.T) / 2


def figure_of_merit(sigma_theta: Matrix, f: VectorField) -> float:
    """δB² + B²δα² + B² sin²α δβ², the total Cartesian field variance of a spherical covariance."""
    weight = np.diag([1.0, f.B**2, f.B**2 * math.sin(f.alpha) ** 2])
    return float(np.trace(weight @ sigma_theta))


def spherical_to_cartesian_jacobian(f: VectorField) -> Matrix:
    """∂(B_x, B_y, B_z)/∂(B, α, β)."""
    sa, ca = math.sin(f.alpha), math.cos(f.alpha)
    sb, cb = math.sin(f.beta), math.cos(f.beta)
    return np.array(
        [
            [sa * cb, f.B * ca * cb, -f.B * sa * sb],
            [sa * sb, f.B * ca * sb, f.B * sa * cb],
            [ca, -f.B * sa, 0.0],
        ]
    )


def cartesian_covariance(sigma_theta: Matrix, f: VectorField) -> Matrix:
    jacobian = spherical_to_cartesian_jacobian(f)
    return jacobian @ sigma_theta @ jacobian.T


def mixed_probe_scalar_qfi(P_bloch: float, f: VectorField, T: float, weight: WeightKind) -> float:
    """Scalar QFI of the ancilla-mixed probe in the B -> 0 limit.

    Returns:
        float: T²(2 + P²) for the adapted weight, T²[1 - (1 - P²) sin²α cos²β] for the identity.
    """
    if abs(P_bloch) > 1:
        raise InvalidPolarization(polarization=P_bloch)
    if weight is WeightKind.ADAPTED:
        return T**2 * (2 + P_bloch**2)
    return T**2 * (1 - (1 - P_bloch**2) * math.sin(f.alpha) ** 2 * math.cos(f.beta) ** 2)


def single_qubit_scalar_qfi(f: VectorField, T: float, weight: WeightKind) -> float:
    """Scalar QFI of the ancilla-free |+> probe: 2T² adapted, T²[1 - sin²α cos²β] identity."""
    return mixed_probe_scalar_qfi(0.0, f, T, weight)
