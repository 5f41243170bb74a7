from .scenario import (
    Scenario,
    ModelKind,
    InvalidScenario,
    build_simulation,
    nv_scenario,
    sweep_scenario,
    scaling_scenario,
    mhz,
)
from .tables import Table, Column, InvalidTable
from .executor import ordered_map, task_seeds
from .sweeps import SweepAxis, InvalidGrid, sweep_signal
from .scaling import (
    SensitivityPoint,
    ScalingFit,
    InvalidPoints,
    sensitivity_at,
    sensitivity_vs_n,
    fit_power_law,
    fit_sensitivities,
    sensitivity_table,
    sequential_figure_of_merit,
    projection_vs_shot,
)
from .maps import sensitivity_map, cartesian_figure_of_merit, default_map_grid
from .rotation_optimizer import (
    RotationOptimum,
    NonConvergence,
    InvalidStarts,
    optimize_rotation,
    rotation_objective,
    canonical_angles,
)
from .strategies import StrategyReport, compare_strategies
from .qfim_tables import ideal_qfim_table, mixed_probe_table, mixed_probe_traces
