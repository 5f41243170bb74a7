from __future__ import annotations
from typing import Callable, TypeVar, TYPE_CHECKING
from abc import ABC, abstractmethod

import numpy as np
import numpy.typing as npt

from .runtime_errors import PipelineExecutionException

if TYPE_CHECKING:
    from quantum_sensing_simulator.state.quantum_state import QuantumState
    from quantum_sensing_simulator.readout.readout import MeasuredSignals
    from .performance_metrics import PerformanceMetrics

Result = TypeVar("Result")


class Simulation(ABC):
    """A sensing pipeline mapping three target parameters θ to a probe state and readout signals."""

    parameter_names: tuple[str, str, str]

    @abstractmethod
    def evolve(self, theta: npt.ArrayLike) -> QuantumState:
        """Run the probe through the sensing sequence.

        Args:
            theta (npt.ArrayLike): The three target parameters.

        Returns:
            QuantumState: The state right before the readout.
        """

    @abstractmethod
    def signals(self, theta: npt.ArrayLike) -> MeasuredSignals:
        """Evolve and read out the state, including readout errors where the pipeline models them.

        Args:
            theta (npt.ArrayLike): The three target parameters.

        Returns:
            MeasuredSignals: The readout signals.
        """

    @abstractmethod
    def retained_signals(self, theta: npt.ArrayLike) -> npt.NDArray[np.float64]:
        """The three signals the estimation uses.

        Args:
            theta (npt.ArrayLike): The three target parameters.

        Returns:
            npt.NDArray[np.float64]: Three signals.
        """

    @abstractmethod
    def control_point(self) -> npt.NDArray[np.float64]:
        """The parameters at which the control cancels the target, where the pipeline is evaluated.

        Returns:
            npt.NDArray[np.float64]: The three parameters.
        """

    @abstractmethod
    def get_performance_metrics(self) -> PerformanceMetrics:
        """Get the performance metrics of the simulation.

        Returns:
            PerformanceMetrics: Evaluation count and time spent.
        """

    def _evaluate(self, stage: str, theta: npt.ArrayLike, step: Callable[[], Result]) -> Result:
        metrics = self.get_performance_metrics()
        metrics.resume_timer()
        try:
            result = step()
            metrics.count_evaluation()
            return result
        except PipelineExecutionException:
            raise
        except Exception as e:
            raise PipelineExecutionException(
                stage=stage,
                scenario_repr=f"{self!r} at θ = {np.asarray(theta).tolist()}",
                error_message=e.__repr__(),
            )
        finally:
            metrics.stop_timer()
