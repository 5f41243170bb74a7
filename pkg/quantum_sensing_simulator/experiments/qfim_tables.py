from __future__ import annotations
from typing import Sequence
import logging

import numpy as np

from quantum_sensing_simulator.state.quantum_state import (
    ProbeSpec,
    prepare_ancilla_mixed_probe,
    prepare_probe,
)
from quantum_sensing_simulator.evolution.hamiltonians import VectorField
from quantum_sensing_simulator.evolution.ideal_model import (
    ideal_state_map,
    spherical_probability_map,
)
from quantum_sensing_simulator.fisher import bounds
from quantum_sensing_simulator.fisher.information import fisher_matrices, qfim_numeric
from quantum_sensing_simulator.fisher.propagation import (
    WeightKind,
    WeightMatrix,
    mixed_probe_scalar_qfi,
)
from .executor import ordered_map
from .tables import Column, Table

logger = logging.getLogger(__name__)

# field strength standing in for the B -> 0 limit of the mixed-probe traces
MIXED_PROBE_FIELD = 1e-6


def ideal_qfim_table(points: Sequence[tuple[VectorField, float]]) -> Table:
    """Numerical QFIM and Bell-measurement CFIM diagonals of the Bell probe next to the analytic optimum.

    Args:
        points (Sequence[tuple[VectorField, float]]): (field, sensing time) pairs.

    Returns:
        Table: Per point the field, T, then numeric QFIM, CFIM and analytic diagonals.
    """
    probe = prepare_probe(ProbeSpec(1.0)).rho

    def evaluate(point: tuple[VectorField, float]) -> list[float]:
        f, T = point
        theta = f.as_array()
        matrices = fisher_matrices(ideal_state_map(probe, T), spherical_probability_map(T), theta)
        return [
            *np.diag(matrices.qfim),
            *np.diag(matrices.cfim),
            *bounds.optimal_qfim_diagonal(f, T),
        ]

    names = ("B", "alpha", "beta")
    columns = [Column("B", "rad/us"), Column("alpha", "rad"), Column("beta", "rad"), Column("T", "us")]
    for kind in ("qfim", "cfim", "analytic"):
        columns += [Column(f"{kind}_{name}") for name in names]
    table = Table(columns=tuple(columns))
    logger.info("QFIM table over %d points", len(points))
    for (f, T), values in zip(points, ordered_map(evaluate, points)):
        table.add_row(f.B, f.alpha, f.beta, T, *values)
    return table


def mixed_probe_traces(p_bloch: float, alpha: float, beta: float, T: float) -> tuple[float, float]:
    """Numerical Tr[QFIM W_a] and Tr[QFIM] of the ancilla-mixed probe in the Ramsey normalization near B = 0."""
    f = VectorField(MIXED_PROBE_FIELD, alpha, beta)
    state_map = ideal_state_map(prepare_ancilla_mixed_probe(p_bloch).rho, T, coupling=0.5)
    qfim = qfim_numeric(state_map, f.as_array())
    adapted = float(np.trace(qfim @ WeightMatrix.adapted(f).w))
    return adapted, float(np.trace(qfim))


def mixed_probe_table(
    polarizations: Sequence[float], alpha: float, beta: float, T: float
) -> Table:
    """Scalar QFI of the ancilla-mixed probe against its closed forms for every Bloch polarization."""
    f = VectorField(MIXED_PROBE_FIELD, alpha, beta)
    table = Table(
        columns=(
            Column("P_bloch"),
            Column("adapted_numeric"),
            Column("adapted_analytic"),
            Column("identity_numeric"),
            Column("identity_analytic"),
        )
    )
    values = ordered_map(lambda p: mixed_probe_traces(p, alpha, beta, T), polarizations)
    for p, (adapted, identity) in zip(polarizations, values):
        table.add_row(
            float(p),
            adapted,
            mixed_probe_scalar_qfi(p, f, T, WeightKind.ADAPTED),
            identity,
            mixed_probe_scalar_qfi(p, f, T, WeightKind.IDENTITY),
        )
    return table
