from __future__ import annotations
from dataclasses import dataclass

import numpy as np

from quantum_sensing_simulator.evolution.sequence import RotationAngles
from quantum_sensing_simulator.fisher import bounds
from quantum_sensing_simulator.fisher.noise import Averaged
from quantum_sensing_simulator.settings.settings import Settings
from .maps import cartesian_figure_of_merit
from .rotation_optimizer import RotationOptimum, optimize_rotation
from .tables import Column, Table


@dataclass(frozen=True)
class StrategyReport:
    """Zero-field figures of merit of the estimation strategies.

    The averaged-readout entries are absolute values for the given σ₀, n and T; `unit` is σ₀²/(nT²).
    The projection entries are absolute values of the projection-noise limits.
    """

    sigma0: float
    n: int
    T: float
    sequential_single_parameter: float
    uniform_rotated: float
    optimal_rotated: float
    simultaneous_projection: float
    sequential_projection: float
    optimum: RotationOptimum

    @property
    def unit(self) -> float:
        return self.sigma0**2 / (self.n * self.T**2)

    def to_table(self) -> Table:
        table = Table(
            columns=(Column("strategy"), Column("value"), Column("value_in_unit"), Column("unit"))
        )
        averaged_unit = self.unit
        projection_unit = 1 / (self.n * self.T**2)
        for name, value, unit, unit_name in (
            ("sequential_single_parameter", self.sequential_single_parameter, averaged_unit, "sigma0^2/(nT^2)"),
            ("uniform_rotated", self.uniform_rotated, averaged_unit, "sigma0^2/(nT^2)"),
            ("optimal_rotated", self.optimal_rotated, averaged_unit, "sigma0^2/(nT^2)"),
            ("simultaneous_projection", self.simultaneous_projection, projection_unit, "1/(nT^2)"),
            ("sequential_projection", self.sequential_projection, projection_unit, "1/(nT^2)"),
        ):
            table.add_row(name, value, value / unit, unit_name)
        return table


def compare_strategies(
    sigma0: float,
    n: int,
    T: float,
    starts: int = Settings().get()["optimizer_starts"],
    seed: int = 0,
) -> StrategyReport:
    """Sequential single-parameter estimation against simultaneous estimation with the U_r and the optimal rotation.

    The U_r value comes from the finite-difference pipeline at B = 0, the optimal one from optimize_rotation.
    The sequential variant spends n/3 repetitions per parameter, fractional when 3 does not divide n.
    """
    uniform = cartesian_figure_of_merit(
        np.zeros(3), T, Averaged(sigma=sigma0), RotationAngles.uniform()
    ) / n
    optimum = optimize_rotation(sigma0, n, T, starts=starts, seed=seed)
    return StrategyReport(
        sigma0=sigma0,
        n=n,
        T=T,
        sequential_single_parameter=bounds.sequential_single_parameter_averaged(sigma0, n, T),
        uniform_rotated=uniform,
        optimal_rotated=optimum.value,
        simultaneous_projection=bounds.simultaneous_projection_limit(n, T),
        sequential_projection=bounds.sequential_projection_limit(n, T),
        optimum=optimum,
    )
