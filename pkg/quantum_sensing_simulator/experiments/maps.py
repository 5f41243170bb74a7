"""Figure-of-merit landscapes of the ideal model over field strength and sensing time."""

from __future__ import annotations
from typing import Optional
import logging
import math

import numpy as np
import numpy.typing as npt

from quantum_sensing_simulator.evolution.hamiltonians import unit_vector
from quantum_sensing_simulator.evolution.ideal_model import (
    cartesian_probability_map,
    rotated_bell_probabilities_cartesian,
)
from quantum_sensing_simulator.evolution.sequence import RotationAngles
from quantum_sensing_simulator.fisher.information import jacobian_fd
from quantum_sensing_simulator.fisher.noise import NoiseSpec, SingleShot, noise_covariance
from quantum_sensing_simulator.fisher.propagation import SingularJacobian, propagate_errors
from quantum_sensing_simulator.settings.settings import Settings
from .executor import ordered_map
from .sweeps import InvalidGrid, check_grid
from .tables import Column, Table

logger = logging.getLogger(__name__)


def cartesian_figure_of_merit(
    b_vec: npt.ArrayLike, T: float, noise: NoiseSpec, rotation: RotationAngles
) -> float:
    """Tr Σ over (B_x, B_y, B_z) for the Bell probe read out in the rotated basis.

    The estimation uses the outcomes (Φ+, σz Φ+, σx Φ+). Under single-shot noise the Jacobian is taken of the
    confused probabilities. A singular Jacobian gives infinity.
    """
    b_vec = np.asarray(b_vec, dtype=float)
    probabilities = cartesian_probability_map(T, rotation)
    jacobian = jacobian_fd(lambda x: probabilities(x)[:3], b_vec)
    if isinstance(noise, SingleShot):
        # the confusion map is affine with slope 1 - 4ε/3
        jacobian = (1 - 4 * noise.epsilon / 3) * jacobian
    sigma_p = noise_covariance(rotated_bell_probabilities_cartesian(b_vec, T, rotation), noise)
    try:
        sigma_theta = propagate_errors(jacobian, sigma_p)
    except SingularJacobian as e:
        logger.debug("singular point B = %s, T = %s: %r", b_vec, T, e)
        return math.inf
    return float(np.trace(sigma_theta))


def default_map_grid(
    size: int = Settings().get()["map_grid_size"], t_max: float = 1.0
) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """size x size grid with B T inside (0, π): B in (0, π/t_max), T in (0, t_max]."""
    b_values = np.linspace(0, math.pi / t_max, size + 2)[1:-1]
    t_values = np.linspace(0, t_max, size + 1)[1:]
    return b_values, t_values


def sensitivity_map(
    noise: NoiseSpec,
    rotation: Optional[RotationAngles],
    b_values: npt.ArrayLike,
    t_values: npt.ArrayLike,
    alpha: float = Settings().get()["map_alpha"],
    beta: float = Settings().get()["map_beta"],
) -> Table:
    """Figure of merit at every (B, T) of the grid for a field along (α, β).

    Args:
        noise (NoiseSpec): Averaged or single-shot readout noise.
        rotation (Optional[RotationAngles]): Readout rotation, None for the unrotated Bell basis.
        b_values (npt.ArrayLike): Field strengths, >= 0.
        t_values (npt.ArrayLike): Sensing times, > 0.
        alpha (float, optional): Polar angle of the field. Defaults to the map_alpha setting.
        beta (float, optional): Azimuth of the field. Defaults to the map_beta setting.

    Raises:
        InvalidGrid: If a grid is empty, not finite, or not positive.

    Returns:
        Table: Columns (B, T, figure_of_merit); singular points hold infinity.
    """
    b_values = check_grid(b_values)
    t_values = check_grid(t_values)
    if np.any(b_values < 0):
        raise InvalidGrid(reason="field strengths must be non-negative")
    if np.any(t_values <= 0):
        raise InvalidGrid(reason="sensing times must be positive")
    rotation = rotation if rotation is not None else RotationAngles.identity()
    direction = unit_vector(alpha, beta)
    grid = [(float(b), float(t)) for b in b_values for t in t_values]
    values = ordered_map(
        lambda point: cartesian_figure_of_merit(point[0] * direction, point[1], noise, rotation),
        grid,
    )
    singular = sum(1 for value in values if math.isinf(value))
    if singular:
        logger.warning("%d of %d map points are singular and reported as infinity", singular, len(grid))
    table = Table(columns=(Column("B", "rad/us"), Column("T", "us"), Column("figure_of_merit")))
    for (b, t), value in zip(grid, values):
        table.add_row(b, t, value)
    return table
