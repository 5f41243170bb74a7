from dataclasses import dataclass


@dataclass
class ConfigError(ValueError):
    """Base class for all exceptions that occur while reading a scenario configuration."""

    line_number: int
    line: str

    def _location(self) -> str:
        return f"in line {self.line_number}: {self.line}" if self.line_number else "(not set in the configuration)"


@dataclass
class ConfigSyntaxError(ConfigError):
    """A syntax exception that can be raised if the tokenization fails."""

    def __repr__(self) -> str:
        return f"There was a syntax error in line {self.line_number}: {self.line}"


@dataclass
class UnknownSectionError(ConfigError):
    section: str

    def __repr__(self) -> str:
        return f"Section '{self.section}' does not exist {self._location()}"


@dataclass
class UnknownKeyError(ConfigError):
    section: str
    key: str

    def __repr__(self) -> str:
        return f"Key '{self.key}' is not allowed in section '{self.section}' {self._location()}"


@dataclass
class DuplicateKeyError(ConfigError):
    """An exception that can be raised when a key is set twice in the same section."""

    key: str

    def __repr__(self) -> str:
        return f"Key '{self.key}' in line {self.line_number}: '{self.line}' has already been set before."


@dataclass
class ConfigUnitError(ConfigError):
    """An exception that can be raised when a unit is missing, unknown, or of the wrong dimension."""

    key: str
    unit: str
    expected: str

    def __repr__(self) -> str:
        given = f"unit '{self.unit}'" if self.unit else "no unit"
        return f"Key '{self.key}' needs {self.expected} but got {given} {self._location()}"


@dataclass
class ConfigValueError(ConfigError):
    """An exception that can be raised when a value has the wrong type or is rejected by the model."""

    key: str
    reason: str

    def __repr__(self) -> str:
        return f"Invalid value for '{self.key}' {self._location()}: {self.reason}"
