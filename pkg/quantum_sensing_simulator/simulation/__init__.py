from .simulation import Simulation
from .nv_simulation import NvDriveSimulation
from .ideal_simulation import IdealFieldSimulation, Parametrization
from .performance_metrics import PerformanceMetrics
from .runtime_errors import PipelineExecutionException
