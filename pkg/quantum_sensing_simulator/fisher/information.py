"""Finite-difference Jacobians and the quantum and classical Fisher information matrices."""

from __future__ import annotations
from dataclasses import dataclass
from typing import Callable, Optional, Union
import logging

import numpy as np
import numpy.typing as npt

from quantum_sensing_simulator.numerics.operators import Operator
from quantum_sensing_simulator.state.quantum_state import QuantumState
from quantum_sensing_simulator.settings.settings import Settings

logger = logging.getLogger(__name__)

Vector = npt.NDArray[np.float64]
Matrix = npt.NDArray[np.float64]


@dataclass
class DegenerateState(ArithmeticError):
    pair_threshold: float

    def __repr__(self):
        return f"DegenerateState: no eigenvalue pair of the state sums above {self.pair_threshold:.1e}"


@dataclass
class InvalidFisherMatrix(ValueError):
    name: str
    reason: str

    def __repr__(self):
        return f"InvalidFisherMatrix: {self.name} {self.reason}"


@dataclass(frozen=True)
class FisherMatrices:
    """Fisher information of one estimation problem, with the Jacobian of the retained signals."""

    jacobian: Matrix
    qfim: Optional[Matrix] = None
    cfim: Optional[Matrix] = None

    def __post_init__(self):
        for name in ("qfim", "cfim"):
            matrix = getattr(self, name)
            if matrix is None:
                continue
            if np.max(np.abs(matrix - matrix.T)) > 1e-9 * max(1.0, np.max(np.abs(matrix))):
                raise InvalidFisherMatrix(name=name, reason="is not symmetric")
            if np.min(np.linalg.eigvalsh(matrix)) < -1e-9 * max(1.0, np.max(np.abs(matrix))):
                raise InvalidFisherMatrix(name=name, reason="is not positive semidefinite")


def _steps(theta: Vector, step: float) -> Vector:
    return step * np.maximum(1.0, np.abs(theta))


def jacobian_fd(
    f: Callable[[Vector], Vector],
    theta: npt.ArrayLike,
    step: float = Settings().get()["fd_step"],
) -> Matrix:
    """Central-difference Jacobian J_ij = [f_i(θ + h_j e_j) - f_i(θ - h_j e_j)] / 2h_j with h_j = step * max(1, |θ_j|).

    Args:
        f (Callable[[Vector], Vector]): The map θ -> f(θ).
        theta (npt.ArrayLike): Point of evaluation.
        step (float, optional): Relative step. Defaults to the fd_step setting.

    Returns:
        Matrix: Array of shape (len(f(θ)), len(θ)).
    """
    theta = np.asarray(theta, dtype=float)
    columns = []
    for j, h in enumerate(_steps(theta, step)):
        shift = np.zeros_like(theta)
        shift[j] = h
        columns.append(
            (np.asarray(f(theta + shift), dtype=float) - np.asarray(f(theta - shift), dtype=float)) / (2 * h)
        )
    return np.column_stack(columns)


def _density(value: Union[QuantumState, Operator]) -> Operator:
    return value.rho if isinstance(value, QuantumState) else np.asarray(value, dtype=complex)


def qfim_numeric(
    state_fn: Callable[[Vector], Union[QuantumState, Operator]],
    theta: npt.ArrayLike,
    step: float = Settings().get()["fd_step"],
) -> Matrix:
    """Quantum Fisher information matrix of a parametrized state.

    QFI_ij = 2 Σ_{h,k} Re[<k|∂_iρ|h><h|∂_jρ|k>] / (λ_k + λ_h) over the eigenpairs of ρ(θ) with λ_k + λ_h above
    the qfim_pair_threshold setting. The derivatives ∂_iρ are central differences.

    Raises:
        DegenerateState: If no eigenvalue pair passes the threshold.
    """
    theta = np.asarray(theta, dtype=float)
    threshold = Settings().get()["qfim_pair_threshold"]
    rho = _density(state_fn(theta))
    eigenvalues, eigenvectors = np.linalg.eigh((rho + rho.conj().T) / 2)
    pair_sums = eigenvalues[:, None] + eigenvalues[None, :]
    included = pair_sums > threshold
    if not np.any(included):
        raise DegenerateState(pair_threshold=threshold)
    weights = np.where(included, 2 / np.where(included, pair_sums, 1.0), 0.0)

    derivatives = []
    for j, h in enumerate(_steps(theta, step)):
        shift = np.zeros_like(theta)
        shift[j] = h
        d_rho = (_density(state_fn(theta + shift)) - _density(state_fn(theta - shift))) / (2 * h)
        # derivative in the eigenbasis of ρ(θ)
        derivatives.append(eigenvectors.conj().T @ d_rho @ eigenvectors)

    size = len(theta)
    qfim = np.zeros((size, size))
    for i in range(size):
        for j in range(i, size):
            # Σ_{k,h} w_kh <k|∂_iρ|h><h|∂_jρ|k>
            value = float(np.real(np.sum(weights * derivatives[i] * derivatives[j].T)))
            qfim[i, j] = qfim[j, i] = value
    return qfim


def cfim(
    probs_fn: Callable[[Vector], Vector],
    theta: npt.ArrayLike,
    step: float = Settings().get()["fd_step"],
) -> Matrix:
    """Classical Fisher information FIM_ij = Σ_k ∂_i p_k ∂_j p_k / p_k.

    Outcomes with p_k at or below the cfim_outcome_threshold setting are skipped and their count is logged.
    """
    theta = np.asarray(theta, dtype=float)
    threshold = Settings().get()["cfim_outcome_threshold"]
    p = np.asarray(probs_fn(theta), dtype=float)
    jacobian = jacobian_fd(probs_fn, theta, step)
    included = p > threshold
    skipped = int(np.count_nonzero(~included))
    if skipped:
        logger.debug("cfim at %s skipped %d outcome(s) below %.1e", theta, skipped, threshold)
    rows = jacobian[included]
    return rows.T @ (rows / p[included, None])


def fisher_matrices(
    state_fn: Callable[[Vector], Union[QuantumState, Operator]],
    probs_fn: Callable[[Vector], Vector],
    theta: npt.ArrayLike,
    step: float = Settings().get()["fd_step"],
) -> FisherMatrices:
    """QFIM, CFIM and the Jacobian of the first three outcomes at θ."""
    return FisherMatrices(
        jacobian=jacobian_fd(lambda x: np.asarray(probs_fn(x))[:3], theta, step),
        qfim=qfim_numeric(state_fn, theta, step),
        cfim=cfim(probs_fn, theta, step),
    )
