"""Exception hierarchy. Library code raises these; only main.py maps them to exit codes."""

from typing import List, Optional


class CpDetectError(Exception):
    """Base class for every error raised by cpdetect."""

    exit_code = 1


class InputError(CpDetectError, ValueError):
    """A precondition or domain constraint was violated by the caller."""

    exit_code = 2


class MatrixParseError(InputError):
    """Observation CSV could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + location)


class ConfigError(InputError):
    """A run config failed schema validation. Carries every offending key."""

    def __init__(self, source: str, problems: List[str]):
        self.source = source
        self.problems = list(problems)
        lines = "\n".join(f"  - {p}" for p in self.problems)
        super().__init__(f"invalid config {source}:\n{lines}")


class NumericFailure(CpDetectError, ArithmeticError):
    """A quantity could not be represented (e.g. likelihood ratio overflow)."""

    exit_code = 3
