from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
import logging

import numpy as np
import numpy.typing as npt

from quantum_sensing_simulator.evolution.sequence import RotationAngles
from .executor import ordered_map
from .scenario import Scenario, build_simulation
from .tables import Column, Table

logger = logging.getLogger(__name__)


@dataclass
class InvalidGrid(ValueError):
    reason: str

    def __repr__(self):
        return f"InvalidGrid: {self.reason}"


class SweepAxis(Enum):
    """Swept quantity: one of the three target parameters, or the rotation fraction c of the readout gate."""

    OMEGA = "omega"
    DELTA = "delta"
    PHI = "phi"
    ROTATION = "rotation"

    @property
    def index(self) -> int:
        return {SweepAxis.OMEGA: 0, SweepAxis.DELTA: 1, SweepAxis.PHI: 2}[self]

    @property
    def unit(self) -> str:
        return {
            SweepAxis.OMEGA: "rad/us",
            SweepAxis.DELTA: "rad/us",
            SweepAxis.PHI: "rad",
            SweepAxis.ROTATION: "",
        }[self]


def check_grid(grid: npt.ArrayLike) -> npt.NDArray[np.float64]:
    values = np.atleast_1d(np.asarray(grid, dtype=float))
    if values.size == 0:
        raise InvalidGrid(reason="the grid is empty")
    if not np.all(np.isfinite(values)):
        raise InvalidGrid(reason="the grid has non-finite values")
    return values


def sweep_signal(scenario: Scenario, axis: SweepAxis, grid: npt.ArrayLike) -> Table:
    """Readout signals (p1, p2, p3) while one quantity is swept and the others stay at the scenario target.

    Args:
        scenario (Scenario): The experiment.
        axis (SweepAxis): The swept quantity. For the ideal model the three parameter axes select B, α, β.
        grid (npt.ArrayLike): Values of the swept quantity.

    Raises:
        InvalidGrid: If the grid is empty or not finite.

    Returns:
        Table: Columns (value, p1, p2, p3).
    """
    values = check_grid(grid)
    base = scenario.target.as_array()

    if axis is SweepAxis.ROTATION:
        rotation = scenario.sequence.rotation

        def evaluate(value: float) -> npt.NDArray[np.float64]:
            swept = scenario.with_rotation(RotationAngles(rotation.a, rotation.b, value))
            return build_simulation(swept).signals(base).retained()

    else:
        simulation = build_simulation(scenario)

        def evaluate(value: float) -> npt.NDArray[np.float64]:
            theta = base.copy()
            theta[axis.index] = value
            return simulation.signals(theta).retained()

    logger.info("sweeping %s over %d points", axis.value, values.size)
    table = Table(
        columns=(Column(axis.value, axis.unit), Column("p1"), Column("p2"), Column("p3"))
    )
    for value, signals in zip(values, ordered_map(evaluate, values)):
        table.add_row(float(value), *(float(p) for p in signals))
    return table
