"""Pydantic schemas for probability distributions and entropy vectors.

All models are frozen: values are immutable after construction and safe to
share between threads.
"""

import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from jsentropy.core.config import settings
from jsentropy.core.exceptions import InvalidInputError, describe_validation_error

# Rounding slack when comparing a decimal sum against a user tolerance.
SUM_ROUNDING_SLACK = 1e-12


class ProbabilityDistribution(BaseModel):
    """Outcome probabilities of one projective measurement.

    The constructor enforces the strict sum-to-one tolerance. Empirical data
    goes through :meth:`from_empirical`, which renormalises within the
    lenient tolerance.
    """

    model_config = ConfigDict(frozen=True)

    probs: tuple[float, ...] = Field(
        ...,
        min_length=1,
        description="Outcome probabilities, dimensionless",
    )

    @field_validator("probs")
    @classmethod
    def check_probabilities(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        """Every entry in [0, 1] and the total within STRICT_TOLERANCE of 1."""
        for index, p in enumerate(v):
            if not math.isfinite(p) or p < 0.0 or p > 1.0:
                raise ValueError(f"probability at index {index} is {p}, outside [0, 1]")
        total = math.fsum(v)
        if abs(total - 1.0) > settings.STRICT_TOLERANCE:
            raise ValueError(
                f"probabilities sum to {total!r}, not 1 within {settings.STRICT_TOLERANCE}"
            )
        return v

    @property
    def n_outcomes(self) -> int:
        return len(self.probs)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=float)

    @classmethod
    def strict(cls, values: "list[float] | tuple[float, ...] | np.ndarray") -> "ProbabilityDistribution":
        """Build an analytic distribution, raising InvalidInputError on failure."""
        try:
            return cls(probs=tuple(float(p) for p in values))
        except ValidationError as exc:
            raise InvalidInputError(
                f"invalid distribution: {describe_validation_error(exc)}"
            ) from exc

    @classmethod
    def from_empirical(
        cls,
        values: "list[float] | tuple[float, ...] | np.ndarray",
        tolerance: Optional[float] = None,
    ) -> tuple["ProbabilityDistribution", Optional[str]]:
        """Build a distribution from measured frequencies.

        Args:
            values: Observed probabilities
            tolerance: Allowed deviation of the sum from 1
                (defaults to ``settings.LENIENT_TOLERANCE``)

        Returns:
            The renormalised distribution and a normalisation note, or
            ``None`` when the input already summed to 1 within the strict
            tolerance.

        Raises:
            InvalidInputError: Negative entry, empty input or sum off-tolerance
        """
        tol = settings.LENIENT_TOLERANCE if tolerance is None else tolerance
        raw = [float(p) for p in values]
        if not raw:
            raise InvalidInputError("distribution has no outcomes")
        for index, p in enumerate(raw):
            if not math.isfinite(p) or p < 0.0:
                raise InvalidInputError(
                    f"probability at index {index} is {p}, must be finite and nonnegative",
                    details={"index": index, "value": p},
                )
        total = math.fsum(raw)
        if abs(total - 1.0) > tol + SUM_ROUNDING_SLACK:
            raise InvalidInputError(
                f"probabilities sum to {total!r}, not 1 within {tol}",
                details={"sum": total, "tolerance": tol},
            )
        if abs(total - 1.0) <= settings.STRICT_TOLERANCE:
            return cls.strict(raw), None
        note = f"renormalised from sum {total:.12g}"
        return cls.strict([p / total for p in raw]), note

    @classmethod
    def from_counts(cls, counts: "list[int] | np.ndarray") -> "ProbabilityDistribution":
        """Empirical frequencies of a shot sample."""
        arr = np.asarray(counts, dtype=float)
        total = arr.sum()
        if arr.size == 0 or total <= 0:
            raise InvalidInputError("counts must be nonempty with a positive total")
        return cls.strict(arr / total)


class EntropyValue(BaseModel):
    """Entropy of one measurement in bits."""

    model_config = ConfigDict(frozen=True)

    bits: float = Field(..., ge=0.0, description="Base-2 entropy")
    outcomes: Optional[int] = Field(None, ge=1, description="Number of outcomes, if known")

    @model_validator(mode="after")
    def check_range(self) -> "EntropyValue":
        if self.outcomes is not None and self.bits > math.log2(self.outcomes) + 1e-9:
            raise ValueError(
                f"entropy {self.bits} exceeds log2({self.outcomes}) = {math.log2(self.outcomes)}"
            )
        return self

    def __float__(self) -> float:
        return self.bits


class MeasurementRecord(BaseModel):
    """Observed outcome distribution of one labelled measurement."""

    model_config = ConfigDict(frozen=True)

    label: str = Field(..., min_length=1, description="Measurement identifier")
    distribution: ProbabilityDistribution
    note: Optional[str] = Field(None, description="Normalisation note for empirical inputs")


class EntropyVector(BaseModel):
    """Ordered entropies H(M_1), ..., H(M_n) for measurements on one state.

    ``estimate`` marks vectors produced by an estimator. Those may hold
    negative components (raw James-Stein with a negative factor); measured
    entropies may not.
    """

    model_config = ConfigDict(frozen=True)

    entries: tuple[float, ...] = Field(..., min_length=1, description="Entropies in bits")
    state_label: str = Field("", description="Label of the prepared state")
    parameter_a: Optional[float] = Field(None, gt=0.0, lt=1.0)
    estimate: bool = False

    @model_validator(mode="after")
    def check_entries(self) -> "EntropyVector":
        for index, h in enumerate(self.entries):
            if not math.isfinite(h):
                raise ValueError(f"entry {index} is not finite: {h}")
            if h < 0.0 and not self.estimate:
                raise ValueError(f"entry {index} is negative: {h}")
        return self

    @property
    def n(self) -> int:
        return len(self.entries)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=float)

    def scaled(self, factor: float) -> "EntropyVector":
        """Component-wise multiple of this vector, flagged as an estimate."""
        return EntropyVector(
            entries=tuple(factor * h for h in self.entries),
            state_label=self.state_label,
            parameter_a=self.parameter_a,
            estimate=True,
        )

    @classmethod
    def of(
        cls,
        entries: "list[float] | tuple[float, ...] | np.ndarray",
        state_label: str = "",
        parameter_a: Optional[float] = None,
    ) -> "EntropyVector":
        """Build a measured entropy vector, raising InvalidInputError on failure."""
        try:
            return cls(
                entries=tuple(float(h) for h in entries),
                state_label=state_label,
                parameter_a=parameter_a,
            )
        except ValidationError as exc:
            raise InvalidInputError(
                f"invalid entropy vector: {describe_validation_error(exc)}"
            ) from exc
