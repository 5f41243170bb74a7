"""Bell-basis readout of the electron-nuclear pair and its state preparation and measurement (SPAM) error models."""

from __future__ import annotations
from dataclasses import dataclass
from typing import Optional

import numpy as np
import numpy.typing as npt

from quantum_sensing_simulator.state.quantum_state import (
    QuantumState,
    apply_unitary,
    bell_reference_basis,
    disentangler,
    populations,
)
from quantum_sensing_simulator.evolution.sequence import (
    RotationAngles,
    rotation_gate,
)
from quantum_sensing_simulator.settings.settings import Settings


@dataclass
class InvalidRate(ValueError):
    name: str
    value: float

    def __repr__(self):
        return f"InvalidRate: '{self.name}' = {self.value} is outside the allowed range"


@dataclass
class InvalidSpamModel(ValueError):
    reason: str

    def __repr__(self):
        return f"InvalidSpamModel: {self.reason}"


@dataclass
class InvalidProbability(ValueError):
    values: tuple[float, ...]
    reason: str

    def __repr__(self):
        rendered = ", ".join(f"{value:.6g}" for value in self.values)
        return f"InvalidProbability: ({rendered}) {self.reason}"


@dataclass(frozen=True)
class SpamModel:
    """Partial nuclear polarization P and the leakage rates ζ, γ, η of the three-pulse readout."""

    polarization: float = Settings().get()["polarization"]
    zeta: float = Settings().get()["spam_zeta"]
    gamma: float = Settings().get()["spam_gamma"]
    eta: float = Settings().get()["spam_eta"]

    def __post_init__(self):
        if not 0 <= self.polarization <= 1:
            raise InvalidRate(name="polarization", value=self.polarization)
        for name in ("zeta", "gamma", "eta"):
            if getattr(self, name) < 0:
                raise InvalidRate(name=name, value=getattr(self, name))
        if self.zeta > 1:
            raise InvalidRate(name="zeta", value=self.zeta)
        if 2 * self.gamma + 2 * self.eta > 1:
            raise InvalidSpamModel(reason="2γ + 2η exceeds 1, p3 would turn negative")

    @classmethod
    def ideal(cls) -> SpamModel:
        return cls(polarization=1.0, zeta=0.0, gamma=0.0, eta=0.0)


@dataclass(frozen=True)
class MeasuredSignals:
    """Populations (p1, p2, p3) of |-1,+1>, |-1,0>, |0,0>; p4 of |0,+1> is known only before SPAM."""

    p1: float
    p2: float
    p3: float
    p4: Optional[float] = None

    def __post_init__(self):
        tolerance = Settings().get()["probability_tolerance"]
        values = self.as_tuple()
        if any(not -tolerance <= value <= 1 + tolerance for value in values):
            raise InvalidProbability(values=values, reason="has entries outside [0, 1]")
        if self.p4 is None:
            if sum(values) > 1 + tolerance:
                raise InvalidProbability(values=values, reason="sums to more than 1")
        elif abs(sum(values) - 1) > tolerance:
            raise InvalidProbability(values=values, reason="does not sum to 1")

    def as_tuple(self) -> tuple[float, ...]:
        if self.p4 is None:
            return (self.p1, self.p2, self.p3)
        return (self.p1, self.p2, self.p3, self.p4)

    def retained(self) -> npt.NDArray[np.float64]:
        """The three measured signals (p1, p2, p3)."""
        return np.array([self.p1, self.p2, self.p3])


def measure_bell(state: QuantumState, r: RotationAngles) -> MeasuredSignals:
    """Rotation gate, disentangler and population readout.

    Args:
        state (QuantumState): State after the sensing sequence.
        r (RotationAngles): Readout rotation.

    Returns:
        MeasuredSignals: (p1, p2, p3, p4) in the readout labeling, before SPAM.
    """
    readout = apply_unitary(state, disentangler() @ rotation_gate(r))
    # roundoff may leave entries slightly below zero
    p1, p2, p3, p4 = (float(value) for value in np.clip(populations(readout), 0.0, 1.0))
    return MeasuredSignals(p1=p1, p2=p2, p3=p3, p4=p4)


def bell_probabilities(state: QuantumState, r: RotationAngles = RotationAngles.identity()) -> npt.NDArray[np.float64]:
    """Projective measurement onto the rotated reference basis (R ⊗ I)(Φ+, σz Φ+, σx Φ+, σy Φ+)."""
    u = rotation_gate(r)
    return np.array(
        [float(np.real(np.vdot(u @ b, state.rho @ (u @ b)))) for b in bell_reference_basis()]
    )


def spam_matrix(model: SpamModel) -> npt.NDArray[np.float64]:
    """The leakage map M with (p1', p2', p3') = M (p1, p2, p3)."""
    return np.array(
        [
            [1.0, 0.0, 0.0],
            [0.0, 1 - model.zeta, model.eta],
            [0.0, 0.0, 1 - 2 * model.gamma - 2 * model.eta],
        ]
    )


def spam_apply(signals: MeasuredSignals, model: SpamModel) -> MeasuredSignals:
    """p1' = p1, p2' = (1-ζ)p2 + ηp3, p3' = (1-2γ-2η)p3; p4 is not observable afterwards."""
    p = spam_matrix(model) @ signals.retained()
    return MeasuredSignals(p1=float(p[0]), p2=float(p[1]), p3=float(p[2]))


def confusion_apply(p: npt.ArrayLike, epsilon: float) -> npt.NDArray[np.float64]:
    """Single-shot confusion: each outcome is misread as any of the other three with probability ε/3.

    Raises:
        InvalidRate: If ε is outside [0, 1).
    """
    if not 0 <= epsilon < 1:
        raise InvalidRate(name="epsilon", value=epsilon)
    p = np.asarray(p, dtype=float)
    return p * (1 - 4 * epsilon / 3) + epsilon / 3
