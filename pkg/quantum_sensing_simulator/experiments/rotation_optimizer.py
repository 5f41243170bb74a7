"""Search for the readout rotation that minimizes the zero-field figure of merit under averaged readout noise."""

from __future__ import annotations
from dataclasses import dataclass
import logging
import math

import numpy as np
import numpy.typing as npt
import scipy.optimize

from quantum_sensing_simulator.evolution.ideal_model import zero_field_jacobian
from quantum_sensing_simulator.evolution.sequence import RotationAngles
from quantum_sensing_simulator.fisher.propagation import SingularJacobian, propagate_errors
from quantum_sensing_simulator.settings.settings import Settings
from .executor import ordered_map, task_seeds

logger = logging.getLogger(__name__)


@dataclass
class NonConvergence(RuntimeError):
    starts: int
    best_spread: float
    tolerance: float

    def __repr__(self):
        return (
            f"NonConvergence: none of {self.starts} restarts shrank the simplex below {self.tolerance:.1e} "
            f"(best spread {self.best_spread:.3e})"
        )


@dataclass
class InvalidStarts(ValueError):
    starts: int

    def __repr__(self):
        return f"InvalidStarts: need at least one start, got {self.starts}"


@dataclass(frozen=True)
class RotationOptimum:
    angles: RotationAngles
    value: float
    converged_starts: int


@dataclass(frozen=True)
class _LocalResult:
    x: npt.NDArray[np.float64]
    value: float
    spread: float


def rotation_objective(r: RotationAngles, sigma0: float, n: int, T: float) -> float:
    """Zero-field Cartesian figure of merit Tr[J⁻¹ Σ_p J⁻ᵀ] with Σ_p = σ₀²I/n; infinity where J is singular."""
    try:
        sigma_theta = propagate_errors(zero_field_jacobian(r, T), sigma0**2 / n * np.eye(3))
    except SingularJacobian:
        return math.inf
    return float(np.trace(sigma_theta))


def canonical_angles(x: npt.ArrayLike) -> RotationAngles:
    """Representative of the symmetry orbit with a, b in [0, π/2] and c in [0, 1].

    The objective depends on the squared amplitudes cos²θ, sin²θ m_k² only (θ = πc/2), which the folding keeps.
    """
    a, b, c = np.asarray(x, dtype=float)
    theta = math.pi * c / 2
    folded_theta = math.atan2(abs(math.sin(theta)), abs(math.cos(theta)))
    return RotationAngles(
        a=math.atan2(abs(math.sin(a)), abs(math.cos(a))),
        b=math.atan2(abs(math.sin(b)), abs(math.cos(b))),
        c=2 * folded_theta / math.pi,
    )


def _simplex_spread(simplex: npt.NDArray[np.float64]) -> float:
    return float(np.max(np.abs(simplex[1:] - simplex[0])))


def optimize_rotation(
    sigma0: float,
    n: int,
    T: float,
    starts: int = Settings().get()["optimizer_starts"],
    seed: int = 0,
) -> RotationOptimum:
    """Nelder-Mead with restarts over the rotation angles (a, b, c).

    The first start is U_r, the others are drawn from seeded generators, one per restart.

    Args:
        sigma0 (float): Averaged readout noise σ₀.
        n (int): Number of repetitions.
        T (float): Sensing time.
        starts (int, optional): Number of restarts. Defaults to the optimizer_starts setting.
        seed (int, optional): Seed of the random starts. Defaults to 0.

    Raises:
        InvalidStarts: If starts < 1.
        NonConvergence: If no restart shrinks its simplex below the spread tolerance.

    Returns:
        RotationOptimum: The best canonical angles and their objective value.
    """
    if starts < 1:
        raise InvalidStarts(starts=starts)
    settings = Settings().get()
    tolerance = settings["optimizer_spread_tolerance"]

    def objective(x: npt.NDArray[np.float64]) -> float:
        return rotation_objective(RotationAngles(*x), sigma0, n, T)

    initial = [RotationAngles.uniform().as_array()]
    for sequence in task_seeds(seed, starts - 1):
        rng = np.random.default_rng(sequence)
        initial.append(rng.uniform([0.0, -math.pi, 0.0], [math.pi, math.pi, 2.0]))

    def local_search(x0: npt.NDArray[np.float64]) -> _LocalResult:
        result = scipy.optimize.minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={
                "xatol": settings["optimizer_xatol"],
                "fatol": settings["optimizer_fatol"],
                "maxiter": settings["optimizer_max_iterations"],
                "maxfev": 2 * settings["optimizer_max_iterations"],
            },
        )
        spread = _simplex_spread(result.final_simplex[0])
        logger.debug("restart from %s: value %.12g, spread %.3e", x0, result.fun, spread)
        return _LocalResult(x=result.x, value=float(result.fun), spread=spread)

    results = ordered_map(local_search, initial)
    converged = [result for result in results if result.spread <= tolerance and math.isfinite(result.value)]
    if not converged:
        raise NonConvergence(
            starts=starts, best_spread=min(result.spread for result in results), tolerance=tolerance
        )
    if len(converged) < len(results):
        logger.warning("%d of %d restarts did not converge", len(results) - len(converged), len(results))
    best = min(converged, key=lambda result: result.value)
    angles = canonical_angles(best.x)
    logger.info("optimal rotation %s with value %.12g", angles, best.value)
    return RotationOptimum(angles=angles, value=best.value, converged_starts=len(converged))
