from .config_exceptions import (
    ConfigError,
    ConfigSyntaxError,
    UnknownSectionError,
    UnknownKeyError,
    DuplicateKeyError,
    ConfigUnitError,
    ConfigValueError,
)
from .config_parser import ConfigParser, ConfigDocument, ConfigEntry
from .scenario_builder import (
    build_scenario,
    build_noise,
    build_rotation,
    build_sweep,
    build_scaling,
    build_optimize,
    build_maps,
    build_ideal,
    build_projection,
    random_ideal_points,
    SweepParameters,
    OptimizeParameters,
    MapParameters,
    IdealParameters,
    ProjectionParameters,
)
