"""The ideal vector-field model: a sensor qubit under H(B) = B n·σ entangled with a noiseless ancilla."""

from __future__ import annotations
from typing import Callable
import math

import numpy as np
import numpy.typing as npt

from quantum_sensing_simulator.numerics.operators import Operator, dagger, electron_operator, expm
from quantum_sensing_simulator.evolution.hamiltonians import (
    InvalidParameters,
    VectorField,
    cartesian_hamiltonian,
    field_hamiltonian,
    ideal_hamiltonian,
    unit_vector,
)
from quantum_sensing_simulator.evolution.sequence import RotationAngles

StateMap = Callable[[npt.NDArray[np.float64]], Operator]
ProbabilityMap = Callable[[npt.NDArray[np.float64]], npt.NDArray[np.float64]]


def ideal_unitary(f: VectorField, T: float, coupling: float = 1.0) -> Operator:
    """exp(-i H(B) T) ⊗ I."""
    if T < 0:
        raise InvalidParameters(name="T", value=T)
    return electron_operator(expm(ideal_hamiltonian(f, coupling), -1j * T))


def ideal_bell_probabilities(f: VectorField, T: float) -> npt.NDArray[np.float64]:
    """Bell-basis outcome probabilities of the evolved |Φ+> in the order (Φ+, σz Φ+, σx Φ+, σy Φ+).

    Returns:
        npt.NDArray[np.float64]: (cos²(BT), sin²(BT)cos²α, sin²(BT)sin²α cos²β, sin²(BT)sin²α sin²β).
    """
    if T < 0:
        raise InvalidParameters(name="T", value=T)
    c2 = math.cos(f.B * T) ** 2
    s2 = 1 - c2
    return np.array(
        [
            c2,
            s2 * math.cos(f.alpha) ** 2,
            s2 * math.sin(f.alpha) ** 2 * math.cos(f.beta) ** 2,
            s2 * math.sin(f.alpha) ** 2 * math.sin(f.beta) ** 2,
        ]
    )


def rotated_bell_probabilities_cartesian(
    b_vec: npt.ArrayLike, T: float, r: RotationAngles
) -> npt.NDArray[np.float64]:
    """Rotated-basis Bell probabilities in Cartesian field components, regular at B = 0.

    The evolution exp(-iT b·σ) = cos φ - i s·σ (φ = T|b|, s = sin φ b/|b|) is composed with the inverse
    readout rotation cos θ + i sin θ m·σ, and the four real amplitudes of the product are squared.

    Args:
        b_vec (npt.ArrayLike): (B_x, B_y, B_z) in rad/us.
        T (float): Sensing time in us.
        r (RotationAngles): The readout rotation.

    Returns:
        npt.NDArray[np.float64]: Probabilities in the order (Φ+, σz Φ+, σx Φ+, σy Φ+).
    """
    if T < 0:
        raise InvalidParameters(name="T", value=T)
    b_vec = np.asarray(b_vec, dtype=float)
    magnitude = float(np.linalg.norm(b_vec))
    cos_phi = math.cos(T * magnitude)
    # np.sinc(x) = sin(πx)/(πx) keeps s finite at |b| = 0
    s = T * np.sinc(T * magnitude / math.pi) * b_vec
    theta = r.half_angle()
    m = r.axis()
    a0 = math.cos(theta) * cos_phi + math.sin(theta) * float(m @ s)
    a = math.cos(theta) * s - math.sin(theta) * cos_phi * m - math.sin(theta) * np.cross(m, s)
    return np.array([a0**2, a[2] ** 2, a[0] ** 2, a[1] ** 2])


def rotated_bell_probabilities(
    f: VectorField, T: float, r: RotationAngles
) -> npt.NDArray[np.float64]:
    """Bell probabilities when the reference basis is rotated by r on the sensor; r = identity gives ideal_bell_probabilities."""
    return rotated_bell_probabilities_cartesian(f.cartesian(), T, r)


def zero_field_jacobian(r: RotationAngles, T: float) -> npt.NDArray[np.float64]:
    """Analytic Jacobian of the retained outcomes (Φ+, σz Φ+, σx Φ+) with respect to (B_x, B_y, B_z) at B = 0.

    With r0 = cos θ and (r_x, r_y, r_z) = sin θ m the rows are
    2T r0 (r_x, r_y, r_z), -2T r_z (r_y, -r_x, r0) and -2T r_x (r0, r_z, -r_y).
    """
    theta = r.half_angle()
    r0 = math.cos(theta)
    rx, ry, rz = math.sin(theta) * r.axis()
    return (
        2
        * T
        * np.array(
            [
                [r0 * rx, r0 * ry, r0 * rz],
                [-rz * ry, rz * rx, -rz * r0],
                [-rx * r0, -rx * rz, rx * ry],
            ]
        )
    )


def ideal_state_map(probe: Operator, T: float, coupling: float = 1.0) -> StateMap:
    """θ = (B, α, β) -> (U ⊗ I) ρ (U ⊗ I)^dagger with U = exp(-i coupling B n·σ T)."""

    def state(theta: npt.NDArray[np.float64]) -> Operator:
        b, alpha, beta = theta
        u = electron_operator(expm(field_hamiltonian(b, alpha, beta, coupling), -1j * T))
        return u @ probe @ dagger(u)

    return state


def cartesian_state_map(probe: Operator, T: float, coupling: float = 1.0) -> StateMap:
    """θ = (B_x, B_y, B_z) -> evolved probe."""

    def state(theta: npt.NDArray[np.float64]) -> Operator:
        u = electron_operator(expm(cartesian_hamiltonian(theta, coupling), -1j * T))
        return u @ probe @ dagger(u)

    return state


def spherical_probability_map(
    T: float, r: RotationAngles = RotationAngles.identity()
) -> ProbabilityMap:
    """θ = (B, α, β) -> rotated Bell probabilities of the pure Bell probe."""

    def probabilities(theta: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        b, alpha, beta = theta
        return rotated_bell_probabilities_cartesian(b * unit_vector(alpha, beta), T, r)

    return probabilities


def cartesian_probability_map(
    T: float, r: RotationAngles = RotationAngles.identity()
) -> ProbabilityMap:
    def probabilities(theta: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        return rotated_bell_probabilities_cartesian(theta, T, r)

    return probabilities
