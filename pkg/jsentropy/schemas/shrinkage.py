"""Pydantic schemas for James-Stein shrinkage of entropy vectors."""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from jsentropy.schemas.distribution import EntropyVector


class Sigma2Mode(str, Enum):
    """Where the noise variance fed to the shrinkage factor comes from."""

    PROVIDED = "provided"
    FROM_REFERENCE = "reference"
    SAMPLE_VARIANCE = "sample"


class ShrinkageConfig(BaseModel):
    """Shrinkage settings.

    ``sigma2`` is required in PROVIDED mode and ignored otherwise. The
    variance estimator behind FROM_REFERENCE and SAMPLE_VARIANCE uses the
    1/n divisor and no square root, so the value is a variance even where the
    source formula calls it a standard deviation.
    """

    model_config = ConfigDict(frozen=True)

    sigma2_mode: Sigma2Mode = Field(Sigma2Mode.FROM_REFERENCE, description="Variance source")
    sigma2: Optional[float] = Field(None, ge=0.0, description="Provided noise variance")
    positive_part: bool = Field(True, description="Clamp the factor below at 0")

    @model_validator(mode="after")
    def check_provided(self) -> "ShrinkageConfig":
        if self.sigma2_mode == Sigma2Mode.PROVIDED and self.sigma2 is None:
            raise ValueError("sigma2 is required when sigma2_mode is 'provided'")
        return self

    @classmethod
    def provided(cls, sigma2: float, positive_part: bool = True) -> "ShrinkageConfig":
        return cls(sigma2_mode=Sigma2Mode.PROVIDED, sigma2=sigma2, positive_part=positive_part)


class ShrinkageResult(BaseModel):
    """Raw and shrunk entropy vectors with their sums."""

    model_config = ConfigDict(frozen=True)

    raw: EntropyVector
    factor: float
    shrunk: EntropyVector
    sum_raw: float = Field(..., description="Sum of raw entropies, bits")
    sum_shrunk: float = Field(..., description="Sum of shrunk entropies, bits")
    sigma2_used: float = Field(..., ge=0.0)
    sigma2_source: Sigma2Mode
    clamped: bool = False
    positive_part: bool = True
