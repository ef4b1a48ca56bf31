"""Application configuration using Pydantic settings.

Configuration is loaded from environment variables (prefix ``JSENTROPY_``)
or a .env file. Nothing is required: every value has a working default and
the CLI flags override what matters per invocation.
"""

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from jsentropy import __version__


class Settings(BaseSettings):
    """Analysis settings.

    All settings can be overridden via environment variables.
    For example, JSENTROPY_LENIENT_TOLERANCE=1e-2 widens the sum-to-one
    check applied to empirical probabilities.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="JSENTROPY_",
        case_sensitive=True,
        extra="ignore",
    )

    # Application
    PROJECT_NAME: str = "jsentropy"
    VERSION: str = __version__
    ENVIRONMENT: str = "development"

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "text"  # json or text

    # Probability validation
    STRICT_TOLERANCE: float = 1e-9
    LENIENT_TOLERANCE: float = 1e-3
    ZERO_PROBABILITY_CUTOFF: float = 1e-15

    # Matrices and bases
    MATRIX_TOLERANCE: float = 1e-10
    MAX_DIMENSION: int = 16
    SATISFACTION_TOLERANCE: float = 1e-9

    # Computational-basis indices of the spin-1 states |0> and |-1>.
    STATE_INDEX_ZERO: int = 0
    STATE_INDEX_MINUS_ONE: int = 2

    # Monte-Carlo
    RISK_CHUNK_SIZE: int = 100_000

    # Output
    SIGNIFICANT_DIGITS: int = 6
    FORMAT_VERSION: str = "1.0"

    @field_validator(
        "STRICT_TOLERANCE",
        "LENIENT_TOLERANCE",
        "ZERO_PROBABILITY_CUTOFF",
        "MATRIX_TOLERANCE",
        "SATISFACTION_TOLERANCE",
    )
    @classmethod
    def check_positive(cls, v: float) -> float:
        """Tolerances must be strictly positive."""
        if v <= 0:
            raise ValueError(f"tolerance must be positive, got {v}")
        return v

    @field_validator("LOG_FORMAT")
    @classmethod
    def check_log_format(cls, v: str) -> str:
        """Only json and text renderers exist."""
        v = v.lower()
        if v not in ("json", "text"):
            raise ValueError(f"LOG_FORMAT must be 'json' or 'text', got {v!r}")
        return v

    @field_validator("MAX_DIMENSION", "RISK_CHUNK_SIZE", "SIGNIFICANT_DIGITS")
    @classmethod
    def check_count(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"must be at least 1, got {v}")
        return v


# Create global settings instance
settings = Settings()
