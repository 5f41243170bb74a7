from __future__ import annotations
from dataclasses import dataclass
import math

import numpy as np
import numpy.typing as npt

from quantum_sensing_simulator.numerics.operators import (
    Operator,
    IDENTITY_2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    electron_operator,
    kron,
    nuclear_operator,
)


@dataclass
class InvalidParameters(ValueError):
    name: str
    value: float

    def __repr__(self):
        return f"InvalidParameters: '{self.name}' = {self.value} is not allowed"


@dataclass(frozen=True)
class VectorField:
    """Ideal-model field (B, α, β): magnitude in rad/us, polar and azimuthal angle in rad."""

    B: float
    alpha: float
    beta: float

    def __post_init__(self):
        if not math.isfinite(self.B) or self.B < 0:
            raise InvalidParameters(name="B", value=self.B)
        if not 0 <= self.alpha <= math.pi:
            raise InvalidParameters(name="alpha", value=self.alpha)
        if not -math.pi <= self.beta <= math.pi:
            raise InvalidParameters(name="beta", value=self.beta)

    def as_array(self) -> npt.NDArray[np.float64]:
        return np.array([self.B, self.alpha, self.beta])

    def cartesian(self) -> npt.NDArray[np.float64]:
        """Returns (B_x, B_y, B_z)."""
        return self.B * unit_vector(self.alpha, self.beta)


@dataclass(frozen=True)
class DriveParams:
    """NV drive parameters: Rabi frequency Ω and detuning Δ in rad/us, phase Φ in rad."""

    omega: float
    delta: float
    phi: float

    def __post_init__(self):
        for name in ("omega", "delta", "phi"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidParameters(name=name, value=value)
        if self.omega < 0:
            raise InvalidParameters(name="omega", value=self.omega)

    def as_array(self) -> npt.NDArray[np.float64]:
        return np.array([self.omega, self.delta, self.phi])


def unit_vector(alpha: float, beta: float) -> npt.NDArray[np.float64]:
    return np.array(
        [
            math.sin(alpha) * math.cos(beta),
            math.sin(alpha) * math.sin(beta),
            math.cos(alpha),
        ]
    )


def cartesian_hamiltonian(b_vec: npt.ArrayLike, coupling: float = 1.0) -> Operator:
    """coupling * (B_x σx + B_y σy + B_z σz)."""
    bx, by, bz = np.asarray(b_vec, dtype=float)
    return coupling * (bx * SIGMA_X + by * SIGMA_Y + bz * SIGMA_Z)


def field_hamiltonian(
    b: float, alpha: float, beta: float, coupling: float = 1.0
) -> Operator:
    """Same as ideal_hamiltonian on raw floats, so finite differences may step outside the VectorField ranges."""
    return cartesian_hamiltonian(b * unit_vector(alpha, beta), coupling)


def ideal_hamiltonian(f: VectorField, coupling: float = 1.0) -> Operator:
    """H(B) = B[sin α cos β σx + sin α sin β σy + cos α σz].

    Args:
        f (VectorField): The field.
        coupling (float, optional): Prefactor of the field, 1/2 gives the Ramsey normalization (B/2) n·σ. Defaults to 1.0.

    Returns:
        Operator: The 2x2 Hamiltonian with eigenvalues ±coupling*B.
    """
    return field_hamiltonian(f.B, f.alpha, f.beta, coupling)


def drive_hamiltonian(p: DriveParams) -> Operator:
    """H(Ω, Δ, Φ) = (Δ/2)σz + (Ω/2)(cos Φ σx - sin Φ σy)."""
    return p.delta / 2 * SIGMA_Z + p.omega / 2 * (
        math.cos(p.phi) * SIGMA_X - math.sin(p.phi) * SIGMA_Y
    )


def hyperfine_hamiltonian(A: float) -> Operator:
    """H_int = A(-σz^e + σz^n - σz^e σz^n)/4.

    Diagonal in the labeling (|0,+1>, |0,0>, |-1,+1>, |-1,0>) with entries (-A/4, -A/4, 3A/4, -A/4).
    """
    return (
        A
        / 4
        * (
            -electron_operator(SIGMA_Z)
            + nuclear_operator(SIGMA_Z)
            - kron(SIGMA_Z, SIGMA_Z)
        )
    )


def two_spin_hamiltonian(p: DriveParams, A: float) -> Operator:
    """The drive on the electron plus the hyperfine interaction, H(p) ⊗ I + H_int."""
    return kron(drive_hamiltonian(p), IDENTITY_2) + hyperfine_hamiltonian(A)
