"""Closed-form sensitivities used as oracles for the numerical pipelines.

Averaged-readout values carry the shot-noise level σ₀; projection values are in units of 1/n.
"""

from __future__ import annotations
import math

import numpy as np
import numpy.typing as npt

from quantum_sensing_simulator.evolution.hamiltonians import VectorField
from quantum_sensing_simulator.evolution.sequence import RotationAngles


def optimal_qfim_diagonal(f: VectorField, T: float) -> npt.NDArray[np.float64]:
    """Diagonal of the QFIM of the Bell probe in (B, α, β): (4T², 4 sin²(BT), 4 sin²(BT) sin²α)."""
    s2 = math.sin(f.B * T) ** 2
    return np.array([4 * T**2, 4 * s2, 4 * s2 * math.sin(f.alpha) ** 2])


def sequential_scheme_figure_of_merit(B: float, t: float, N: int, n: int = 1) -> float:
    """(1/4nN²)[1/t² + 2B²/sin²(Bt)] for N loops of dwell t under exact inverse control."""
    return (1 / t**2 + 2 * B**2 / math.sin(B * t) ** 2) / (4 * n * N**2)


def simultaneous_projection_limit(n: int, T: float) -> float:
    return 3 / (4 * n * T**2)


def sequential_projection_limit(n: int, T: float) -> float:
    """Three single-parameter estimations, each given n/3 repetitions."""
    return 9 / (4 * n * T**2)


def sequential_single_parameter_averaged(sigma0: float, n: int, T: float) -> float:
    return 9 * sigma0**2 / (n * T**2)


def uniform_rotation_averaged(sigma0: float, n: int, T: float) -> float:
    return 6 * sigma0**2 / (n * T**2)


def optimal_rotation_averaged(sigma0: float, n: int, T: float) -> float:
    return 3 * (math.sqrt(3) + 2) * sigma0**2 / (2 * n * T**2)


def optimal_rotation_angles() -> RotationAngles:
    return RotationAngles(
        a=math.atan(math.sqrt(math.sqrt(3) + 1)),
        b=math.atan(3**0.25),
        c=2 / math.pi * math.atan(math.sqrt(math.sqrt(3) + 2)),
    )


def rotated_zero_field_figure_of_merit(r: RotationAngles, sigma0: float, n: int, T: float) -> float:
    """σ₀²/(4nT²)[1/r0² + 1/r_x² + 3/r_y² + 1/r_z²] with r0 = cos θ and (r_x, r_y, r_z) = sin θ m.

    Infinite when any of the four amplitudes vanishes.
    """
    theta = r.half_angle()
    amplitudes = np.concatenate([[math.cos(theta)], math.sin(theta) * r.axis()])
    squares = amplitudes**2
    if np.any(squares == 0):
        return math.inf
    return sigma0**2 / (4 * n * T**2) * float(np.sum(np.array([1.0, 1.0, 3.0, 1.0]) / squares))


def unrotated_averaged_figure_of_merit(f: VectorField, T: float, sigma0: float, n: int = 1) -> float:
    """Figure of merit of the unrotated Bell readout under averaged noise σ₀²I at a generic (B, α, β).

    σ₀² csc²(BT)/(4nT²)[sec²(BT) + B²T² csc²(BT)(csc²α(3 csc²β + sec²β) + tan²α)].
    """
    x = f.B * T
    csc2_x = 1 / math.sin(x) ** 2
    angular = (
        (3 / math.sin(f.beta) ** 2 + 1 / math.cos(f.beta) ** 2) / math.sin(f.alpha) ** 2
        + math.tan(f.alpha) ** 2
    )
    return sigma0**2 * csc2_x / (4 * n * T**2) * (1 / math.cos(x) ** 2 + x**2 * csc2_x * angular)
