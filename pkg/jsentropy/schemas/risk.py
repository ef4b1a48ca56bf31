"""Pydantic schemas for the Monte-Carlo risk comparison."""

import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class EstimatorKind(str, Enum):
    """Estimators compared by the risk simulation."""

    LS = "ls"
    JS = "js"
    JS_POSITIVE_PART = "js+"


ESTIMATOR_ORDER = (EstimatorKind.LS, EstimatorKind.JS, EstimatorKind.JS_POSITIVE_PART)


class RiskTrialConfig(BaseModel):
    """y = theta + N(0, sigma^2 I) trials at a fixed true parameter."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Dimension")
    theta: tuple[float, ...] = Field(..., description="True parameter, length n")
    sigma: float = Field(1.0, gt=0.0, description="Noise standard deviation")
    trials: int = Field(..., ge=1)
    seed: int = Field(0, ge=0)
    estimators: frozenset[EstimatorKind] = Field(default_factory=lambda: frozenset(ESTIMATOR_ORDER))
    estimate_sigma2: bool = Field(
        False,
        description="Estimate sigma^2 per trial as the mean squared deviation from theta",
    )

    @model_validator(mode="after")
    def check_theta(self) -> "RiskTrialConfig":
        if len(self.theta) != self.n:
            raise ValueError(f"theta has {len(self.theta)} components, expected {self.n}")
        if not all(math.isfinite(t) for t in self.theta):
            raise ValueError("theta must be finite")
        if not self.estimators:
            raise ValueError("at least one estimator is required")
        return self

    @property
    def theta_norm(self) -> float:
        return math.sqrt(math.fsum(t * t for t in self.theta))


class EstimatorRisk(BaseModel):
    """Empirical frequentist risk E|estimate - theta|^2 of one estimator."""

    model_config = ConfigDict(frozen=True)

    estimator: EstimatorKind
    risk: float = Field(..., ge=0.0)
    standard_error: float
    ratio_to_ls: float
    diff_vs_ls: float = Field(0.0, description="Mean of LS error minus this estimator's error")
    diff_se: float = Field(0.0, description="Standard error of the paired difference")
    clamp_rate: float = Field(0.0, ge=0.0, le=1.0)


class RiskReport(BaseModel):
    """Per-estimator risks for one configuration."""

    model_config = ConfigDict(frozen=True)

    n: int
    theta_norm: float
    sigma: float
    trials: int
    seed: int
    estimate_sigma2: bool = False
    risks: list[EstimatorRisk]

    def get(self, estimator: EstimatorKind) -> Optional[EstimatorRisk]:
        for risk in self.risks:
            if risk.estimator == estimator:
                return risk
        return None


class SweepRow(BaseModel):
    """One estimator in one (n, |theta|) cell of a dominance sweep."""

    model_config = ConfigDict(frozen=True)

    n: int
    theta_norm: float
    sigma: float
    trials: int
    estimator: EstimatorKind
    risk: float
    standard_error: float
    ratio_to_ls: float
    diff_vs_ls: float
    diff_se: float
    dominates: Optional[bool] = Field(
        None,
        description="Risk below LS by more than 3 paired standard errors (None for LS)",
    )
