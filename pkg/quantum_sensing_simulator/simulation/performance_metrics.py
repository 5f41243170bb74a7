from dataclasses import dataclass, field
from typing import Optional
import threading
import time


@dataclass
class PerformanceMetrics:
    """Holds and measures the cost of the pipeline evaluations of a simulation.

    The timer runs while at least one evaluation is in flight, so concurrent evaluations are timed once.
    """

    _execution_time_s: float = 0
    evaluation_count: int = 0
    _start: Optional[float] = None
    _running: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def resume_timer(self):
        """Start/resume the timer which measures the time spent evaluating the pipeline.
        Calling this function when the timer is already running won't restart it, the timer will just keep running.
        """
        with self._lock:
            self._running += 1
            if self._start is None:
                self._start = time.time()

    def stop_timer(self):
        """Stops the timer once every resume has been matched. Calling this function when the timer is not running will not do anything."""
        with self._lock:
            if self._start is None:
                return
            self._running = max(0, self._running - 1)
            if self._running == 0:
                self._execution_time_s += time.time() - self._start
                self._start = None

    def count_evaluation(self):
        with self._lock:
            self.evaluation_count += 1

    def get_execution_time(self) -> float:
        """Returns the time for which the timer has been running, including the current run if the timer is running.

        Returns:
            float: The time in seconds.
        """
        start = self._start
        return self._execution_time_s + ((time.time() - start) if start is not None else 0)

    def __repr__(self):
        execution_time = self.get_execution_time()
        representation = f"execution time: {execution_time:.2f}s\n"
        if execution_time:
            representation += f"evaluations per second: {self.evaluation_count / execution_time:.2f}\n"
        representation += f"evaluations: {self.evaluation_count}\n"
        return representation
