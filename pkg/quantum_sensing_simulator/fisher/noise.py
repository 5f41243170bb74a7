"""Covariance models of the three retained readout signals."""

from __future__ import annotations
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import numpy.typing as npt

from quantum_sensing_simulator.readout.readout import InvalidProbability, confusion_apply
from quantum_sensing_simulator.settings.settings import Settings


@dataclass
class InvalidNoiseSpec(ValueError):
    name: str
    value: float

    def __repr__(self):
        return f"InvalidNoiseSpec: '{self.name}' = {self.value} is not allowed"


@dataclass(frozen=True)
class QuantumProjection:
    """Multinomial statistics of n projective measurements."""

    n: int = Settings().get()["projection_shots"]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidNoiseSpec(name="n", value=self.n)


@dataclass(frozen=True)
class SingleShot:
    """Multinomial statistics after each outcome is confused with probability ε."""

    n: int
    epsilon: float

    def __post_init__(self):
        if self.n < 1:
            raise InvalidNoiseSpec(name="n", value=self.n)
        if not 0 <= self.epsilon < 1:
            raise InvalidNoiseSpec(name="epsilon", value=self.epsilon)


@dataclass(frozen=True)
class Averaged:
    """Photon shot noise σ²I, optionally plus the multinomial term of n shots."""

    sigma: float = Settings().get()["averaged_sigma"]
    include_projection: bool = False
    n: int = 1

    def __post_init__(self):
        if not self.sigma > 0:
            raise InvalidNoiseSpec(name="sigma", value=self.sigma)
        if self.n < 1:
            raise InvalidNoiseSpec(name="n", value=self.n)


NoiseSpec = QuantumProjection | SingleShot | Averaged


def _as_full_distribution(p: npt.ArrayLike) -> npt.NDArray[np.float64]:
    p = np.asarray(p, dtype=float)
    tolerance = Settings().get()["probability_tolerance"]
    if p.shape not in ((3,), (4,)):
        raise InvalidProbability(values=tuple(p.ravel()), reason="must have 3 or 4 entries")
    if np.any(p < -tolerance) or np.any(p > 1 + tolerance):
        raise InvalidProbability(values=tuple(p), reason="has entries outside [0, 1]")
    if p.shape == (3,):
        if p.sum() > 1 + tolerance:
            raise InvalidProbability(values=tuple(p), reason="sums to more than 1")
        p = np.append(p, max(0.0, 1 - p.sum()))
    elif abs(p.sum() - 1) > tolerance:
        raise InvalidProbability(values=tuple(p), reason="does not sum to 1")
    return np.clip(p, 0.0, 1.0)


def multinomial_covariance(p: npt.ArrayLike, n: int) -> npt.NDArray[np.float64]:
    """Covariance of the first three observed frequencies of n multinomial trials: (diag(p) - p pᵀ)/n."""
    retained = _as_full_distribution(p)[:3]
    return (np.diag(retained) - np.outer(retained, retained)) / n


def noise_covariance(p: npt.ArrayLike, spec: NoiseSpec) -> npt.NDArray[np.float64]:
    """Covariance Σ_p of the three retained signals under a noise model.

    Args:
        p (npt.ArrayLike): Outcome probabilities, three retained entries or the full four.
        spec (NoiseSpec): The noise model.

    Raises:
        InvalidProbability: If p is not a (sub)probability vector.

    Returns:
        npt.NDArray[np.float64]: The 3x3 covariance.
    """
    full = _as_full_distribution(p)
    match spec:
        case QuantumProjection(n=n):
            return multinomial_covariance(full, n)
        case SingleShot(n=n, epsilon=epsilon):
            return multinomial_covariance(confusion_apply(full, epsilon), n)
        case Averaged(sigma=sigma, include_projection=include_projection, n=n):
            covariance = sigma**2 * np.eye(3)
            if include_projection:
                covariance = covariance + multinomial_covariance(full, n)
            return covariance
    raise InvalidNoiseSpec(name=type(spec).__name__, value=float("nan"))


def sample_covariance(
    p: npt.ArrayLike,
    shots: int,
    draws: int,
    seed: int,
    transform: Optional[Callable[[npt.NDArray[np.float64]], npt.NDArray[np.float64]]] = None,
) -> npt.NDArray[np.float64]:
    """Empirical covariance of the first three frequencies over seeded multinomial draws.

    Args:
        p (npt.ArrayLike): Outcome probabilities.
        shots (int): Trials per draw.
        draws (int): Number of draws.
        seed (int): Seed of the generator.
        transform (Optional[Callable], optional): Applied to every row of frequencies before the first three are kept,
            e.g. a SPAM map. Defaults to None.

    Returns:
        npt.NDArray[np.float64]: The 3x3 sample covariance.
    """
    rng = np.random.default_rng(seed)
    frequencies = rng.multinomial(shots, _as_full_distribution(p), size=draws) / shots
    if transform is not None:
        frequencies = np.apply_along_axis(transform, 1, frequencies)
    return np.cov(frequencies[:, :3], rowvar=False)
