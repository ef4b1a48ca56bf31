"""Least-squares and James-Stein estimation of entropy vectors.

The James-Stein estimate multiplies the observation vector y by
``1 - (n - 2) * sigma2 / |y|^2``. With the positive part enabled (default)
the factor is clamped below at 0, so a large noise estimate drives every
component to zero instead of flipping signs.

Array-level helpers (``shrinkage_factors``) work on stacked trials and are
what the Monte-Carlo risk simulation calls; the EntropyVector functions wrap
them with validation.
"""

import math
from typing import Optional

import numpy as np
import structlog

from jsentropy.core.exceptions import DegenerateInputError, DimensionError, InvalidInputError
from jsentropy.schemas.distribution import EntropyVector
from jsentropy.schemas.shrinkage import ShrinkageConfig, ShrinkageResult, Sigma2Mode

logger = structlog.stdlib.get_logger(__name__)

# Shrinkage needs at least this many simultaneous parameters to pay off.
MIN_JS_DIMENSION = 3


def check_js_dimension(n: int) -> None:
    """Raise DimensionError for fewer than three parameters."""
    if n < MIN_JS_DIMENSION:
        raise DimensionError(
            f"James-Stein shrinkage needs n >= {MIN_JS_DIMENSION} parameters, got n = {n}: "
            "least squares is only inadmissible for three or more simultaneous estimates",
            details={"n": n},
        )


def shrinkage_factors(
    y: np.ndarray,
    sigma2: "float | np.ndarray",
    positive_part: bool = True,
) -> tuple[np.ndarray, np.ndarray]:
    """James-Stein factors along the last axis of ``y``.

    Args:
        y: Observations, shape (..., n)
        sigma2: Noise variance, scalar or broadcastable to y.shape[:-1]
        positive_part: Clamp factors below at 0

    Returns:
        Factors and a boolean mask of where clamping happened, both of
        shape y.shape[:-1]. Rows with |y|^2 = 0 get factor -inf, which
        the positive part turns into 0.
    """
    y = np.asarray(y, dtype=float)
    n = y.shape[-1]
    norm2 = np.einsum("...i,...i->...", y, y)
    penalty = (n - 2) * np.asarray(sigma2, dtype=float)
    ratio = np.divide(penalty, norm2, out=np.full(np.shape(norm2), np.inf), where=norm2 > 0)
    raw = 1.0 - ratio
    if positive_part:
        clamped = raw < 0.0
        return np.where(clamped, 0.0, raw), clamped
    return raw, np.zeros(np.shape(raw), dtype=bool)


def least_squares(y: EntropyVector) -> EntropyVector:
    """The least-squares estimate of the true entropies is the observation itself."""
    return y


def sum_entropies(y: EntropyVector) -> float:
    """Total entropy of all measurements, in bits."""
    return math.fsum(y.entries)


def js_factor(y: EntropyVector, sigma2: float, positive_part: bool = True) -> tuple[float, bool]:
    """Shrinkage factor for one entropy vector.

    Returns:
        The factor and whether positive-part clamping occurred.

    Raises:
        DimensionError: n < 3
        DegenerateInputError: |y|^2 = 0
        InvalidInputError: negative or non-finite sigma2
    """
    check_js_dimension(y.n)
    if not math.isfinite(sigma2) or sigma2 < 0.0:
        raise InvalidInputError(f"sigma2 must be finite and nonnegative, got {sigma2}")
    values = y.as_array()
    norm2 = float(np.dot(values, values))
    if norm2 == 0.0:
        raise DegenerateInputError(
            "cannot shrink the zero vector: |y|^2 = 0 (its shrinkage is the zero vector)"
        )
    factors, clamped = shrinkage_factors(values, sigma2, positive_part)
    return float(factors), bool(clamped)


def estimate_sigma2(y: EntropyVector, reference: EntropyVector) -> float:
    """Mean squared deviation of y from a reference: (1/n) sum (y_k - ref_k)^2."""
    if y.n != reference.n:
        raise InvalidInputError(
            f"reference has {reference.n} entries but y has {y.n}",
            details={"n": y.n, "reference_n": reference.n},
        )
    deviations = y.as_array() - reference.as_array()
    return float(np.mean(deviations**2))


def sample_variance_sigma2(y: EntropyVector) -> float:
    """Variance of y about its own mean, with the same 1/n divisor."""
    return float(np.var(y.as_array()))


def resolve_sigma2(
    y: EntropyVector,
    config: ShrinkageConfig,
    reference: Optional[EntropyVector] = None,
) -> float:
    """Noise variance for ``y`` under ``config``.

    Raises:
        InvalidInputError: FROM_REFERENCE without a reference of matching length
    """
    if config.sigma2_mode == Sigma2Mode.PROVIDED:
        return float(config.sigma2)  # validated non-None by the schema
    if config.sigma2_mode == Sigma2Mode.FROM_REFERENCE:
        if reference is None:
            raise InvalidInputError("sigma2 mode 'reference' needs a reference vector")
        return estimate_sigma2(y, reference)
    return sample_variance_sigma2(y)


def james_stein(
    y: EntropyVector,
    config: ShrinkageConfig,
    reference: Optional[EntropyVector] = None,
) -> ShrinkageResult:
    """Shrink an entropy vector toward zero.

    Args:
        y: Measured entropies (n >= 3)
        config: Variance source and positive-part switch
        reference: Theoretical entropies, required in FROM_REFERENCE mode

    Returns:
        ShrinkageResult with ``shrunk = factor * y`` and
        ``sum_shrunk = factor * sum_raw``
    """
    check_js_dimension(y.n)
    sigma2 = resolve_sigma2(y, config, reference)
    factor, clamped = js_factor(y, sigma2, config.positive_part)
    sum_raw = sum_entropies(y)

    if clamped:
        logger.info("shrinkage factor clamped at zero", state_label=y.state_label, sigma2=sigma2)
    logger.debug(
        "james_stein",
        state_label=y.state_label,
        sigma2=sigma2,
        sigma2_source=config.sigma2_mode.value,
        factor=factor,
    )

    return ShrinkageResult(
        raw=y,
        factor=factor,
        shrunk=y.scaled(factor),
        sum_raw=sum_raw,
        sum_shrunk=factor * sum_raw,
        sigma2_used=sigma2,
        sigma2_source=config.sigma2_mode,
        clamped=clamped,
        positive_part=config.positive_part,
    )


def stretched_theory(sum_theory: float, factor: float) -> Optional[float]:
    """Theory prediction stretched toward the data by the inverse factor.

    This is the dual reading of shrinkage: rather than pulling the
    measurement down, scale the prediction up. Undefined when factor <= 0.
    """
    if factor <= 0.0:
        return None
    return sum_theory / factor
