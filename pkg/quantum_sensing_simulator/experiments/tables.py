from __future__ import annotations
from dataclasses import dataclass, field
from typing import Union

import numpy as np
import numpy.typing as npt

Cell = Union[float, int, str]


@dataclass
class InvalidTable(ValueError):
    reason: str

    def __repr__(self):
        return f"InvalidTable: {self.reason}"


@dataclass(frozen=True)
class Column:
    name: str
    unit: str = ""

    @property
    def header(self) -> str:
        return f"{self.name}[{self.unit}]" if self.unit else self.name


@dataclass
class Table:
    """Rows of values under named columns, in declaration order."""

    columns: tuple[Column, ...]
    rows: list[tuple[Cell, ...]] = field(default_factory=list)

    def add_row(self, *values: Cell):
        if len(values) != len(self.columns):
            raise InvalidTable(
                reason=f"row has {len(values)} values for {len(self.columns)} columns"
            )
        self.rows.append(tuple(values))

    def column(self, name: str) -> npt.NDArray:
        for index, column in enumerate(self.columns):
            if column.name == name:
                return np.array([row[index] for row in self.rows])
        raise InvalidTable(reason=f"no column named '{name}'")

    def __len__(self) -> int:
        return len(self.rows)
