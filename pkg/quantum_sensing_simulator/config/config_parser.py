from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any, Optional, Union
import pyparsing as pp

import numpy as np

from .config_exceptions import (
    ConfigSyntaxError,
    ConfigUnitError,
    ConfigValueError,
    DuplicateKeyError,
    UnknownKeyError,
    UnknownSectionError,
)
from .schema import SECTIONS, UNITS, Dimension, Kind, KeySpec

Scalar = Union[int, float, bool, str]


@dataclass(frozen=True)
class ConfigEntry:
    """A validated value, converted to internal units unless its dimension is that of a sweep axis."""

    value: Any
    unit: str
    line_number: int
    line: str


@dataclass
class ConfigDocument:
    sections: dict[str, dict[str, ConfigEntry]] = field(default_factory=dict)

    def entry(self, section: str, key: str) -> Optional[ConfigEntry]:
        return self.sections.get(section, {}).get(key)

    def get(self, section: str, key: str, default: Any = None) -> Any:
        entry = self.entry(section, key)
        return default if entry is None else entry.value

    def has_section(self, section: str) -> bool:
        return section in self.sections


class ConfigParser:
    """Parser for scenario configurations.

    A configuration consists of section headers `[name]` or `[name.sub]` and assignments `key = value [unit]`.
    Values are numbers, true/false, names, lists `[v, v, ...]` and grids `linspace(start, stop, count)`.
    """

    _pattern_name = pp.Word(pp.alphas + "_", pp.alphanums + "_")
    _pattern_number = pp.pyparsing_common.number
    _pattern_bool = (pp.CaselessKeyword("true") | pp.CaselessKeyword("false")).set_parse_action(
        lambda tokens: tokens[0].lower() == "true"
    )
    _pattern_scalar = _pattern_number | _pattern_bool | _pattern_name

    _pattern_list = pp.Group(
        pp.Suppress("[") + pp.Optional(pp.delimited_list(_pattern_scalar)) + pp.Suppress("]")
    )
    _pattern_linspace = pp.Group(
        pp.CaselessKeyword("linspace").suppress()
        + pp.Suppress("(")
        + _pattern_number
        + pp.Suppress(",")
        + _pattern_number
        + pp.Suppress(",")
        + _pattern_number
        + pp.Suppress(")")
    )
    _pattern_unit = pp.one_of(list(UNITS))

    _pattern_section = (
        pp.Suppress("[")
        + pp.Combine(_pattern_name + pp.Optional("." + _pattern_name))("section")
        + pp.Suppress("]")
    )
    _pattern_assignment = (
        _pattern_name("key")
        + pp.Suppress("=")
        + (_pattern_linspace("linspace") | _pattern_list("list") | _pattern_scalar("scalar"))
        + pp.Optional(_pattern_unit("unit"))
    )
    _pattern_line = (_pattern_section | _pattern_assignment) + pp.StringEnd().suppress()

    def parse(self, text: str) -> ConfigDocument:
        """Parses a configuration and validates it against the schema.

        Args:
            text (str): The configuration text.

        Raises:
            ConfigSyntaxError: Indicates a syntax error.
            UnknownSectionError: For a section that does not exist.
            UnknownKeyError: For a key the section does not know.
            DuplicateKeyError: For a key set twice in a section.
            ConfigUnitError: For a missing unit or a unit of the wrong dimension.
            ConfigValueError: For a value of the wrong kind.

        Returns:
            ConfigDocument: The validated sections with values in internal units.
        """
        self.text = text
        self._sanitize()
        self._tokenize()
        return self._build_sections()

    def parse_file(self, path: str) -> ConfigDocument:
        with open(path, encoding="utf-8") as file:
            return self.parse(file.read())

    def _sanitize(self):
        """Removes leading/trailing whitespaces, empty lines and comments from self.text. Gives each line a linenumber (starting at 1). Stores the result in self.sanitized_lines."""
        self.sanitized_lines: list[tuple[int, str]] = []
        for index, line in enumerate(self.text.splitlines()):
            content = line.split("#", maxsplit=1)[0].strip()
            if content:
                self.sanitized_lines.append((index + 1, content))

    def _tokenize(self):
        """Turns self.sanitized_lines into tokens and stores them with the line numbers and lines in self.token_list."""
        self.token_list: list[tuple[int, str, pp.ParseResults]] = []
        for line_number, line in self.sanitized_lines:
            try:
                self.token_list.append((line_number, line, self._pattern_line.parse_string(line)))
            except pp.ParseException:
                raise ConfigSyntaxError(line_number=line_number, line=line)

    def _build_sections(self) -> ConfigDocument:
        document = ConfigDocument()
        section: Optional[str] = None
        for line_number, line, tokens in self.token_list:
            if "section" in tokens:
                section = tokens["section"]
                if section not in SECTIONS:
                    raise UnknownSectionError(line_number=line_number, line=line, section=section)
                document.sections.setdefault(section, {})
                continue
            key = tokens["key"]
            if section is None:
                raise UnknownKeyError(line_number=line_number, line=line, section="", key=key)
            spec = SECTIONS[section].get(key)
            if spec is None:
                raise UnknownKeyError(line_number=line_number, line=line, section=section, key=key)
            if key in document.sections[section]:
                raise DuplicateKeyError(line_number=line_number, line=line, key=key)
            unit = tokens["unit"] if "unit" in tokens else ""
            value = self._convert(self._raw_value(tokens), spec, key, unit, line_number, line)
            document.sections[section][key] = ConfigEntry(
                value=value, unit=unit, line_number=line_number, line=line
            )
        return document

    def _raw_value(self, tokens: pp.ParseResults) -> Union[Scalar, list[Scalar]]:
        if "linspace" in tokens:
            start, stop, count = tokens["linspace"]
            return ("linspace", start, stop, count)
        if "list" in tokens:
            return list(tokens["list"])
        return tokens["scalar"]

    def _convert(
        self, raw: Any, spec: KeySpec, key: str, unit: str, line_number: int, line: str
    ) -> Any:
        def fail(reason: str):
            raise ConfigValueError(line_number=line_number, line=line, key=key, reason=reason)

        if spec.kind in (Kind.FLOAT_LIST, Kind.INT_LIST):
            if isinstance(raw, tuple):
                _, start, stop, count = raw
                if isinstance(count, bool) or not isinstance(count, int) or count < 1:
                    fail("the linspace count must be a positive integer")
                values = list(np.linspace(float(start), float(stop), count))
            elif isinstance(raw, list):
                values = raw
            else:
                fail(f"expected {spec.kind.value}")
            if any(isinstance(v, (bool, str)) for v in values):
                fail(f"expected {spec.kind.value}")
            if spec.kind is Kind.INT_LIST:
                if any(float(v) != int(v) for v in values):
                    fail(f"expected {spec.kind.value}")
                return [int(v) for v in values]
            return [float(v) * self._unit_factor(spec, key, unit, line_number, line) for v in values]

        if isinstance(raw, (list, tuple)):
            fail(f"expected {spec.kind.value}")
        if spec.kind is Kind.BOOL:
            if not isinstance(raw, bool):
                fail("expected true or false")
            return raw
        if spec.kind is Kind.IDENTIFIER:
            if not isinstance(raw, str) or isinstance(raw, bool):
                fail("expected a name")
            if spec.choices is not None and raw not in spec.choices:
                fail(f"expected one of {', '.join(spec.choices)}")
            return raw
        if isinstance(raw, (bool, str)):
            fail(f"expected {spec.kind.value}")
        if spec.kind is Kind.INT:
            if isinstance(raw, float) and not raw.is_integer():
                fail("expected an integer")
            return int(raw)
        return float(raw) * self._unit_factor(spec, key, unit, line_number, line)

    def _unit_factor(self, spec: KeySpec, key: str, unit: str, line_number: int, line: str) -> float:
        """Factor to internal units. Axis-dimensioned values stay in their given unit for the builder to convert."""
        if spec.dimension is Dimension.AXIS:
            return 1.0
        if spec.dimension is None:
            if unit:
                raise ConfigUnitError(line_number=line_number, line=line, key=key, unit=unit, expected="no unit")
            return 1.0
        dimension, factor = UNITS.get(unit, (None, 1.0))
        if dimension is not spec.dimension:
            raise ConfigUnitError(
                line_number=line_number, line=line, key=key, unit=unit, expected=spec.dimension.value
            )
        return factor
