"""Exception hierarchy.

Every error raised on purpose by the library derives from
``EntropyAnalysisError``. The CLI turns these into exit code 1.
"""

from typing import Any, Optional


class EntropyAnalysisError(Exception):
    """Base exception for analysis errors."""

    exit_code = 1

    def __init__(self, message: str, details: Optional[dict[str, Any]] = None):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)


class InvalidInputError(EntropyAnalysisError):
    """An input violates a data invariant (distribution, matrix, basis, labels)."""


class ParameterError(EntropyAnalysisError):
    """A scalar parameter is outside its admissible range."""


class DimensionError(InvalidInputError):
    """Vector length or Hilbert-space dimension is unsupported or inconsistent."""


class DegenerateInputError(EntropyAnalysisError):
    """The input makes the requested quantity undefined (e.g. a zero vector)."""


class ExperimentParseError(InvalidInputError):
    """An experiment or matrix file could not be parsed."""

    def __init__(
        self,
        message: str,
        path: Optional[str] = None,
        line: Optional[int] = None,
        field: Optional[str] = None,
    ):
        context = []
        if path:
            context.append(str(path))
        if line is not None:
            context.append(f"line {line}")
        if field:
            context.append(f"field {field}")
        prefix = f"{': '.join(context)}: " if context else ""
        super().__init__(
            f"{prefix}{message}",
            details={"path": path, "line": line, "field": field},
        )
        self.line = line
        self.field = field


def describe_validation_error(exc: Any) -> str:
    """Flatten a pydantic ValidationError into ``field.path: message`` parts."""
    parts = []
    for error in exc.errors():
        location = ".".join(str(part) for part in error.get("loc", ()))
        message = error.get("msg", "invalid value")
        parts.append(f"{location}: {message}" if location else message)
    return "; ".join(parts)
