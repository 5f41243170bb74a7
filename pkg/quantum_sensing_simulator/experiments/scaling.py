"""Sensitivity of the estimated parameters against the number of loops, and its power-law fit."""

from __future__ import annotations
from dataclasses import dataclass
from typing import Sequence
import logging

import numpy as np
import numpy.typing as npt
import scipy.stats

from quantum_sensing_simulator.evolution.hamiltonians import VectorField
from quantum_sensing_simulator.fisher.information import jacobian_fd, qfim_numeric
from quantum_sensing_simulator.fisher.noise import Averaged, QuantumProjection, noise_covariance
from quantum_sensing_simulator.fisher.propagation import figure_of_merit, propagate_errors
from quantum_sensing_simulator.simulation import IdealFieldSimulation
from quantum_sensing_simulator.settings.settings import Settings
from .executor import ordered_map
from .scenario import Scenario, build_simulation
from .sweeps import InvalidGrid
from .tables import Column, Table

logger = logging.getLogger(__name__)


@dataclass
class InvalidPoints(ValueError):
    reason: str

    def __repr__(self):
        return f"InvalidPoints: {self.reason}"


@dataclass(frozen=True)
class SensitivityPoint:
    n_loops: int
    deltas: tuple[float, float, float]


@dataclass(frozen=True)
class ScalingFit:
    """δ ∝ N^(-exponent), fitted on log-log points."""

    exponent: float
    stderr: float
    points: tuple[tuple[float, float], ...]


def sensitivity_at(scenario: Scenario) -> npt.NDArray[np.float64]:
    """Standard deviations of the three parameters at the control point, by error propagation.

    Raises:
        SingularJacobian: If the Jacobian of the retained signals is singular.
    """
    simulation = build_simulation(scenario)
    theta = simulation.control_point()
    jacobian = jacobian_fd(simulation.retained_signals, theta)
    sigma_p = noise_covariance(simulation.retained_signals(theta), scenario.noise)
    sigma_theta = propagate_errors(jacobian, sigma_p)
    logger.debug("N = %d: %s", scenario.sequence.n_loops, simulation.get_performance_metrics())
    return np.sqrt(np.diag(sigma_theta))


def sensitivity_vs_n(scenario: Scenario, n_values: Sequence[int]) -> list[SensitivityPoint]:
    """(N, δθ1, δθ2, δθ3) for every loop count.

    Raises:
        InvalidGrid: If n_values is empty or holds a value below 1.
        SingularJacobian: If the pipeline is singular at some N, e.g. for P = 0.5.
    """
    n_values = [int(n) for n in n_values]
    if not n_values:
        raise InvalidGrid(reason="no loop counts given")
    if min(n_values) < 1:
        raise InvalidGrid(reason="loop counts must be at least 1")
    logger.info("sensitivity for N in %s", n_values)
    deltas = ordered_map(lambda n: sensitivity_at(scenario.with_loops(n)), n_values)
    return [
        SensitivityPoint(n_loops=n, deltas=tuple(float(value) for value in delta))
        for n, delta in zip(n_values, deltas)
    ]


def fit_power_law(points: Sequence[tuple[float, float]]) -> ScalingFit:
    """Least-squares line through (log N, log δ); the exponent is minus the slope.

    Raises:
        InvalidPoints: With fewer than three points or non-positive values.
    """
    points = tuple((float(n), float(delta)) for n, delta in points)
    if len(points) < 3:
        raise InvalidPoints(reason=f"need at least 3 points, got {len(points)}")
    n_values, deltas = np.array(points).T
    if np.any(n_values <= 0) or np.any(deltas <= 0) or not np.all(np.isfinite(deltas)):
        raise InvalidPoints(reason="all points must be positive and finite")
    if np.unique(n_values).size < 2:
        raise InvalidPoints(reason="need at least two distinct N")
    fit = scipy.stats.linregress(np.log(n_values), np.log(deltas))
    return ScalingFit(exponent=-float(fit.slope), stderr=float(fit.stderr), points=points)


def fit_sensitivities(points: Sequence[SensitivityPoint]) -> list[ScalingFit]:
    """One fit per parameter."""
    return [
        fit_power_law([(point.n_loops, point.deltas[index]) for point in points])
        for index in range(3)
    ]


def sensitivity_table(points: Sequence[SensitivityPoint], parameter_names: Sequence[str]) -> Table:
    table = Table(columns=(Column("N"),) + tuple(Column(f"delta_{name}") for name in parameter_names))
    for point in points:
        table.add_row(point.n_loops, *point.deltas)
    return table


def sequential_figure_of_merit(f: VectorField, dwell: float, n_loops: int, n: int = 1) -> float:
    """Figure of merit of the ideal sequential scheme from the numerical QFIM, Σ = QFIM⁻¹/n.

    Every loop applies the target for the dwell time and then the exact inverse control frozen at the true field.
    """
    simulation = IdealFieldSimulation(truth=f, n_loops=n_loops, dwell=dwell)
    qfim = qfim_numeric(simulation.state_map, f.as_array())
    return figure_of_merit(np.linalg.inv(qfim) / n, f)


def projection_vs_shot(
    scenario: Scenario,
    n_values: Sequence[int],
    shots: int = Settings().get()["projection_shots"],
    sigma: float = Settings().get()["averaged_sigma"],
    include_projection: bool = False,
) -> Table:
    """Sensitivities of identical pipelines under the quantum projection limit and under photon shot noise.

    Returns:
        Table: N, then one projection and one shot-noise column per parameter.
    """
    projection = sensitivity_vs_n(scenario.with_noise(QuantumProjection(n=shots)), n_values)
    shot = sensitivity_vs_n(
        scenario.with_noise(Averaged(sigma=sigma, include_projection=include_projection, n=shots)),
        n_values,
    )
    names = build_simulation(scenario).parameter_names
    columns = [Column("N")]
    for name in names:
        columns += [Column(f"delta_{name}_projection"), Column(f"delta_{name}_shot")]
    table = Table(columns=tuple(columns))
    for projected, averaged in zip(projection, shot):
        row: list[float] = [projected.n_loops]
        for index in range(3):
            row += [projected.deltas[index], averaged.deltas[index]]
        table.add_row(*row)
    return table
