"""Sections, keys, value kinds and units accepted in scenario configurations."""

from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
from typing import Optional
import math


class Dimension(Enum):
    FREQUENCY = "a frequency unit (MHz, kHz, rad/us)"
    TIME = "a time unit (ns, us, µs)"
    ANGLE = "an angle unit (deg, rad)"
    # sweep grids take the dimension of the swept axis
    AXIS = "the unit of the swept axis"


class Kind(Enum):
    FLOAT = "a number"
    INT = "an integer"
    BOOL = "true or false"
    IDENTIFIER = "a name"
    FLOAT_LIST = "a list of numbers"
    INT_LIST = "a list of integers"


# unit -> (dimension, factor to the internal unit: rad/us, us, rad)
UNITS: dict[str, tuple[Dimension, float]] = {
    "MHz": (Dimension.FREQUENCY, 2 * math.pi),
    "kHz": (Dimension.FREQUENCY, 2 * math.pi / 1000),
    "rad/us": (Dimension.FREQUENCY, 1.0),
    "ns": (Dimension.TIME, 1e-3),
    "us": (Dimension.TIME, 1.0),
    "µs": (Dimension.TIME, 1.0),
    "deg": (Dimension.ANGLE, math.pi / 180),
    "rad": (Dimension.ANGLE, 1.0),
}


@dataclass(frozen=True)
class KeySpec:
    kind: Kind
    dimension: Optional[Dimension] = None
    choices: Optional[tuple[str, ...]] = None


def _f(dimension: Optional[Dimension] = None) -> KeySpec:
    return KeySpec(Kind.FLOAT, dimension)


def _choice(*choices: str) -> KeySpec:
    return KeySpec(Kind.IDENTIFIER, choices=choices)


_INT = KeySpec(Kind.INT)
_BOOL = KeySpec(Kind.BOOL)
_FREQUENCY = _f(Dimension.FREQUENCY)
_TIME = _f(Dimension.TIME)
_ANGLE = _f(Dimension.ANGLE)
_ROTATION_PRESET = _choice("none", "identity", "uniform", "optimal")

SECTIONS: dict[str, dict[str, KeySpec]] = {
    "model": {"kind": _choice("nv", "ideal")},
    "probe": {"polarization": _f()},
    "sequence": {
        "n_loops": _INT,
        "dwell": _TIME,
        "hyperfine": _FREQUENCY,
        "compensate": _BOOL,
        "phi_1": _ANGLE,
        "phi_2": _ANGLE,
        "pulses": _choice("instantaneous", "finite"),
        "pulse_rabi": _FREQUENCY,
    },
    "sequence.rotation": {
        "preset": _ROTATION_PRESET,
        "a": _ANGLE,
        "b": _ANGLE,
        "c": _f(),
    },
    "control": {"omega": _FREQUENCY, "delta": _FREQUENCY, "phi": _ANGLE},
    "target": {
        "omega": _FREQUENCY,
        "delta": _FREQUENCY,
        "phi": _ANGLE,
        "B": _FREQUENCY,
        "alpha": _ANGLE,
        "beta": _ANGLE,
    },
    "spam": {"enabled": _BOOL, "zeta": _f(), "gamma": _f(), "eta": _f()},
    "noise": {
        "kind": _choice("averaged", "projection", "single_shot"),
        "sigma": _f(),
        "shots": _INT,
        "epsilon": _f(),
        "include_projection": _BOOL,
    },
    "sweep": {
        "axis": _choice("omega", "delta", "phi", "rotation"),
        "grid": KeySpec(Kind.FLOAT_LIST, Dimension.AXIS),
    },
    "scaling": {"n_values": KeySpec(Kind.INT_LIST)},
    "optimize": {"sigma0": _f(), "n": _INT, "T": _TIME, "starts": _INT},
    "compare": {"sigma0": _f(), "n": _INT, "T": _TIME, "starts": _INT},
    "maps": {
        "rotation": _ROTATION_PRESET,
        "b_values": KeySpec(Kind.FLOAT_LIST, Dimension.FREQUENCY),
        "t_values": KeySpec(Kind.FLOAT_LIST, Dimension.TIME),
        "grid_size": _INT,
        "t_max": _TIME,
        "alpha": _ANGLE,
        "beta": _ANGLE,
    },
    "ideal": {
        "table": _choice("qfim", "mixed"),
        "random_points": _INT,
        "B": KeySpec(Kind.FLOAT_LIST, Dimension.FREQUENCY),
        "alpha": KeySpec(Kind.FLOAT_LIST, Dimension.ANGLE),
        "beta": KeySpec(Kind.FLOAT_LIST, Dimension.ANGLE),
        "T": KeySpec(Kind.FLOAT_LIST, Dimension.TIME),
        "polarizations": KeySpec(Kind.FLOAT_LIST),
        "mixed_alpha": _ANGLE,
        "mixed_beta": _ANGLE,
        "mixed_T": _TIME,
    },
    "projection": {
        "n_values": KeySpec(Kind.INT_LIST),
        "shots": _INT,
        "sigma": _f(),
        "include_projection": _BOOL,
    },
}

AXIS_DIMENSIONS: dict[str, Optional[Dimension]] = {
    "omega": Dimension.FREQUENCY,
    "delta": Dimension.FREQUENCY,
    "phi": Dimension.ANGLE,
    "rotation": None,
}
