from __future__ import annotations
from dataclasses import dataclass
import math


@dataclass
class DegenerateSplitting(ValueError):
    splitting: float

    def __repr__(self):
        return f"DegenerateSplitting: hyperfine splitting must be positive, got {self.splitting}"


@dataclass
class ZeroCoupling(ValueError):
    def __repr__(self):
        return "ZeroCoupling: the hyperfine constant A must be nonzero"


@dataclass(frozen=True)
class PulseCalibration:
    """Scalar pulse settings of the entangling and readout gates. Frequencies in rad/us, times in us, phases in rad."""

    selective_rabi: float
    selective_pi_duration: float
    rf_halfpi_duration_unit: float
    nuclear_phase_correction: float


def pulse_calibration(hyperfine_splitting: float, A: float, tau: float) -> PulseCalibration:
    """Derives the selective π pulse and nuclear gate timings.

    The selective Rabi frequency δ/√3 puts the off-resonant transition at generalized Rabi frequency 2Ω₀,
    so it completes a full turn while the resonant one completes a π rotation.
    The RF π/2 duration must be an integer multiple of 2π/|A|, and the readout nuclear phase is shifted by Aτ/2.

    Args:
        hyperfine_splitting (float): Splitting δ in rad/us.
        A (float): Hyperfine constant in rad/us.
        tau (float): Total free evolution time in us.

    Raises:
        DegenerateSplitting: If δ <= 0.
        ZeroCoupling: If A = 0.

    Returns:
        PulseCalibration: The derived pulse settings.
    """
    if not hyperfine_splitting > 0:
        raise DegenerateSplitting(splitting=hyperfine_splitting)
    if A == 0:
        raise ZeroCoupling()
    selective_rabi = hyperfine_splitting / math.sqrt(3)
    return PulseCalibration(
        selective_rabi=selective_rabi,
        selective_pi_duration=math.pi / selective_rabi,
        rf_halfpi_duration_unit=2 * math.pi / abs(A),
        nuclear_phase_correction=A * tau / 2,
    )
