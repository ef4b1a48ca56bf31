"""Pydantic schemas for experiment files and analysis tables.

Schemas define the structure of what the CLI reads and writes.
"""

from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from jsentropy.core.config import settings


class MeasurementEntry(BaseModel):
    """One measurement block of a record."""

    model_config = ConfigDict(frozen=True)

    label: str = Field(..., min_length=1, description="Measurement label")
    probabilities: tuple[float, ...] = Field(..., min_length=1)

    @field_validator("probabilities", mode="before")
    @classmethod
    def split_probabilities(cls, v: Any) -> Any:
        """Accept a comma-separated string as well as a list."""
        if isinstance(v, str):
            parts = [part.strip() for part in v.split(",") if part.strip()]
            try:
                return tuple(float(part) for part in parts)
            except ValueError as exc:
                raise ValueError(f"probabilities must be numbers: {exc}") from exc
        return v


class ExperimentRecord(BaseModel):
    """Measurements made on one prepared state."""

    model_config = ConfigDict(frozen=True)

    state_label: str = Field(..., min_length=1, description="Prepared-state label")
    parameter_a: Optional[float] = Field(None, gt=0.0, lt=1.0, description="Theory-curve parameter")
    measurements: list[MeasurementEntry] = Field(..., min_length=1)

    @model_validator(mode="after")
    def check_unique_labels(self) -> "ExperimentRecord":
        seen: set[str] = set()
        for measurement in self.measurements:
            if measurement.label in seen:
                raise ValueError(f"duplicate measurement label {measurement.label!r}")
            seen.add(measurement.label)
        return self


class ExperimentFile(BaseModel):
    """Versioned collection of experiment records."""

    model_config = ConfigDict(frozen=True)

    format_version: str = Field(default_factory=lambda: settings.FORMAT_VERSION)
    metadata: dict[str, str] = Field(default_factory=dict)
    records: list[ExperimentRecord] = Field(..., min_length=1)

    @field_validator("format_version", mode="before")
    @classmethod
    def version_as_text(cls, v: Any) -> Any:
        return str(v) if isinstance(v, (int, float)) else v

    @field_validator("metadata", mode="before")
    @classmethod
    def metadata_as_text(cls, v: Any) -> Any:
        if v is None:
            return {}
        if isinstance(v, dict):
            return {str(key): str(value) for key, value in v.items()}
        return v


class ComparisonRow(BaseModel):
    """Experimental, shrunk and theoretical entropy sums of one record.

    ``delta_raw = sum_experimental - sum_theory`` and
    ``delta_js = sum_js - sum_theory``; theory columns are None when the
    record has no theory curve.
    """

    model_config = ConfigDict(frozen=True)

    state_label: str
    parameter_a: Optional[float] = None
    sum_experimental: float
    sum_js: float
    sum_theory: Optional[float] = None
    delta_raw: Optional[float] = None
    delta_js: Optional[float] = None
    factor: float = 1.0
    sigma2_used: float = 0.0
    sigma2_source: str = ""
    sum_theory_stretched: Optional[float] = None


class RecordError(BaseModel):
    """A record the pipeline could not process."""

    model_config = ConfigDict(frozen=True)

    record_index: int
    state_label: str
    message: str


class PipelineResult(BaseModel):
    """Rows produced by the pipeline plus per-record failures."""

    model_config = ConfigDict(frozen=True)

    rows: list[ComparisonRow] = Field(default_factory=list)
    errors: list[RecordError] = Field(default_factory=list)


class CurvePoint(BaseModel):
    """One point of a theory curve."""

    model_config = ConfigDict(frozen=True)

    a: float
    sum_theory: float


class EntropyRow(BaseModel):
    """Entropy of one measurement of one record."""

    model_config = ConfigDict(frozen=True)

    record_index: int
    state_label: str
    parameter_a: Optional[float] = None
    measurement_label: str
    entropy: float
    renyi: Optional[float] = None


class ShrinkRow(BaseModel):
    """Raw and shrunk entropy of one measurement."""

    model_config = ConfigDict(frozen=True)

    record_index: int
    state_label: str
    parameter_a: Optional[float] = None
    measurement_label: str
    raw: float
    shrunk: float
    factor: float
    sigma2_used: float
    sigma2_source: str
    clamped: bool
