"""Von Neumann entropy and the multi-observable entropic lower bound.

For n projective measurements M_1..M_n on a state rho the bound reads

    sum_k H(M_k) >= -log2 b + (n - 1) S(rho)

where b is the largest squared overlap between vectors of distinct bases.
The James-Stein variant compares the shrunk entropy sum against the same
right-hand side.
"""

import itertools
import math
from enum import Enum
from typing import Optional

import numpy as np
import structlog

from jsentropy.core.config import settings
from jsentropy.core.exceptions import DegenerateInputError, DimensionError, InvalidInputError, ParameterError
from jsentropy.schemas.distribution import EntropyVector
from jsentropy.schemas.quantum import BoundReport, DensityMatrix, MeasurementBasis
from jsentropy.services.estimator_service import check_js_dimension, js_factor, sum_entropies

logger = structlog.stdlib.get_logger(__name__)


class AdjustedSumMode(str, Enum):
    """How the shrinkage factor enters the left-hand side of the bound."""

    VECTOR_SHRINKAGE = "vector"
    LITERAL_DOUBLE_SUM = "literal"


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -sum lambda log2 lambda over the spectrum, in bits."""
    eigenvalues = rho.eigenvalues()
    support = eigenvalues[eigenvalues >= settings.ZERO_PROBABILITY_CUTOFF]
    bits = float(-np.sum(support * np.log2(support)))
    return min(max(bits, 0.0), math.log2(rho.dim))


def max_overlap_b(bases: list[MeasurementBasis]) -> float:
    """Largest |<u|v>|^2 over vectors u, v of two distinct bases.

    Raises:
        ParameterError: Fewer than two bases
        DimensionError: Bases of different dimension
    """
    if len(bases) < 2:
        raise ParameterError(f"overlap constant needs at least 2 bases, got {len(bases)}")
    dims = {basis.dim for basis in bases}
    if len(dims) != 1:
        raise DimensionError(f"bases have mixed dimensions {sorted(dims)}")

    b = 0.0
    for first, second in itertools.combinations(bases, 2):
        overlaps = np.abs(first.vectors.conj() @ second.vectors.T) ** 2
        b = max(b, float(overlaps.max()))
    # Overlaps of unit vectors cannot exceed 1; trim rounding.
    return min(b, 1.0)


def liu_bound(b: float, n: int, rho: DensityMatrix) -> float:
    """-log2 b + (n - 1) S(rho), the state-independent multi-observable bound."""
    if not math.isfinite(b) or b <= 0.0 or b > 1.0:
        raise ParameterError(f"overlap constant b must lie in (0, 1], got {b}")
    if n < 2:
        raise ParameterError(f"the bound needs n >= 2 observables, got {n}")
    return -math.log2(b) + (n - 1) * von_neumann_entropy(rho)


def js_adjusted_sum(
    y: EntropyVector,
    sigma2: float,
    mode: AdjustedSumMode = AdjustedSumMode.VECTOR_SHRINKAGE,
    positive_part: bool = True,
) -> float:
    """Entropy sum after James-Stein adjustment.

    VECTOR_SHRINKAGE scales the total by the vector factor. LITERAL_DOUBLE_SUM
    evaluates sum_k sum_r (1 - (n - 2) sigma2 / |H(M_r)|) H(M_k) term by term,
    which multiplies the total by roughly n and uses per-component
    denominators.
    """
    check_js_dimension(y.n)
    if mode == AdjustedSumMode.VECTOR_SHRINKAGE:
        factor, _ = js_factor(y, sigma2, positive_part)
        return factor * sum_entropies(y)

    values = y.as_array()
    if np.any(values == 0.0):
        index = int(np.flatnonzero(values == 0.0)[0])
        raise DegenerateInputError(
            f"literal double sum divides by |H(M_r)| and entry {index} is zero",
            details={"index": index},
        )
    inner = 1.0 - (y.n - 2) * sigma2 / np.abs(values)
    return float(np.sum(inner) * np.sum(values))


def check_relation(
    y: EntropyVector,
    bases: Optional[list[MeasurementBasis]],
    rho: DensityMatrix,
    sigma2: float = 0.0,
    b_override: Optional[float] = None,
) -> BoundReport:
    """Compare raw and shrunk entropy sums with the lower bound.

    Args:
        y: Measured entropies, one per basis
        bases: Measurement bases; may be None when ``b_override`` is given
        rho: State the measurements were made on
        sigma2: Noise variance for the shrinkage factor
        b_override: Overlap constant supplied by the caller

    Returns:
        BoundReport with slack under both the raw and the shrunk sum
    """
    if b_override is not None:
        b, b_source = b_override, "override"
    elif bases:
        b, b_source = max_overlap_b(bases), "max-overlap"
    else:
        raise InvalidInputError("either measurement bases or an explicit b is required")

    if bases:
        if len(bases) != y.n:
            raise DimensionError(f"{len(bases)} bases given for {y.n} entropies")
        if any(basis.dim != rho.dim for basis in bases):
            raise DimensionError(f"bases do not match the state dimension {rho.dim}")

    bound = liu_bound(b, y.n, rho)
    s_rho = von_neumann_entropy(rho)
    sum_raw = sum_entropies(y)

    factor = 1.0
    sum_js = sum_raw
    if y.n >= 3 and sum_raw > 0.0:
        factor, _ = js_factor(y, sigma2)
        sum_js = factor * sum_raw
    elif sigma2 > 0.0:
        logger.warning("shrinkage skipped", n=y.n, sum_raw=sum_raw)

    slack_raw = sum_raw - bound
    slack_js = sum_js - bound
    tol = settings.SATISFACTION_TOLERANCE
    report = BoundReport(
        bound_value=bound,
        b_used=b,
        b_source=b_source,
        n=y.n,
        von_neumann=s_rho,
        sigma2=sigma2,
        factor=factor,
        sum_raw=sum_raw,
        sum_js=sum_js,
        satisfied_raw=slack_raw >= -tol,
        satisfied_js=slack_js >= -tol,
        slack_raw=slack_raw,
        slack_js=slack_js,
        state_label=y.state_label or None,
    )
    logger.debug("check_relation", **report.model_dump())
    return report
