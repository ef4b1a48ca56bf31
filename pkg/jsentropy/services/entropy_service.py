"""Shannon and Renyi entropies, and the closed-form theory curves.

All entropies are in bits. The Shannon entropy uses the standard
H = -sum p log2 p; probabilities below ``ZERO_PROBABILITY_CUTOFF`` contribute
nothing (0 log 0 = 0).
"""

import math
from enum import Enum
from typing import Iterable, Optional

import numpy as np
import structlog
from scipy.stats import entropy as scipy_entropy

from jsentropy.core.config import settings
from jsentropy.core.exceptions import InvalidInputError, ParameterError
from jsentropy.schemas.distribution import (
    EntropyValue,
    EntropyVector,
    MeasurementRecord,
    ProbabilityDistribution,
)

logger = structlog.stdlib.get_logger(__name__)


class TheoryState(str, Enum):
    """Prepared states with a closed-form entropy-sum prediction."""

    MINUS_ONE = "minus1"
    ZERO = "zero"

    @classmethod
    def from_label(cls, label: Optional[str]) -> Optional["TheoryState"]:
        """Map a record's state label to a theory curve, or None if unmapped."""
        if label is None:
            return None
        key = label.strip().lower().replace(" ", "")
        aliases = {
            "zero": cls.ZERO,
            "0": cls.ZERO,
            "|0>": cls.ZERO,
            "|0⟩": cls.ZERO,
            "minus1": cls.MINUS_ONE,
            "minusone": cls.MINUS_ONE,
            "-1": cls.MINUS_ONE,
            "|-1>": cls.MINUS_ONE,
            "|-1⟩": cls.MINUS_ONE,
        }
        return aliases.get(key)


def _clean(probs: np.ndarray) -> np.ndarray:
    return np.where(probs < settings.ZERO_PROBABILITY_CUTOFF, 0.0, probs)


def shannon_entropy(dist: ProbabilityDistribution) -> EntropyValue:
    """Shannon entropy of a distribution in bits."""
    probs = _clean(dist.as_array())
    bits = float(scipy_entropy(probs, base=2))
    # Rounding can leave tiny excursions outside [0, log2 n].
    bits = min(max(bits, 0.0), math.log2(dist.n_outcomes))
    return EntropyValue(bits=bits, outcomes=dist.n_outcomes)


def renyi_entropy(dist: ProbabilityDistribution, alpha: float) -> EntropyValue:
    """Renyi entropy of order ``alpha`` in bits.

    Raises:
        ParameterError: alpha <= 0 or alpha == 1 (use shannon_entropy)
    """
    if not math.isfinite(alpha) or alpha <= 0.0:
        raise ParameterError(f"Renyi order must be positive, got {alpha}")
    if alpha == 1.0:
        raise ParameterError("Renyi order 1 is the Shannon entropy; call shannon_entropy")

    probs = _clean(dist.as_array())
    support = probs[probs > 0.0]
    bits = float(np.log2(np.sum(support**alpha)) / (1.0 - alpha))
    bits = min(max(bits, 0.0), math.log2(dist.n_outcomes))
    return EntropyValue(bits=bits, outcomes=dist.n_outcomes)


def binary_entropy(a: float) -> EntropyValue:
    """h(a) = -a log2 a - (1 - a) log2 (1 - a)."""
    if not math.isfinite(a) or a < 0.0 or a > 1.0:
        raise ParameterError(f"binary entropy parameter must lie in [0, 1], got {a}")
    return shannon_entropy(ProbabilityDistribution(probs=(a, 1.0 - a)))


def _check_open_unit(a: float) -> None:
    if not math.isfinite(a) or a <= 0.0 or a >= 1.0:
        raise ParameterError(f"theory parameter a must lie in (0, 1), got {a}")


def _curve_bits(a: float) -> tuple[float, float]:
    """(|-1> curve, |0> curve) whose difference is exactly one bit."""
    _check_open_unit(a)
    zero = binary_entropy(a).bits + 1.0
    return zero - 1.0, zero


def theory_sum(state: TheoryState, a: float) -> EntropyValue:
    """Predicted three-measurement entropy sum: h(a) for |-1>, h(a) + 1 for |0>."""
    minus, zero = _curve_bits(a)
    return EntropyValue(bits=zero if state == TheoryState.ZERO else minus)


def theory_vector(state: TheoryState, a: float) -> EntropyVector:
    """Per-measurement theoretical entropies of the spin-1 preset family.

    The components sum to :func:`theory_sum`; the order matches the
    ``spin1-family`` preset bases.
    """
    h, _ = _curve_bits(a)
    last = 1.0 if state == TheoryState.ZERO else 0.0
    return EntropyVector(entries=(h, 0.0, last), state_label=state.value, parameter_a=a)


def check_unique_labels(labels: Iterable[str]) -> None:
    """Raise InvalidInputError naming the first repeated label."""
    seen: set[str] = set()
    for index, label in enumerate(labels):
        if label in seen:
            raise InvalidInputError(
                f"duplicate measurement label {label!r} at position {index}",
                details={"label": label, "index": index},
            )
        seen.add(label)


def entropy_vector(
    records: list[MeasurementRecord],
    state_label: str = "",
    parameter_a: Optional[float] = None,
) -> EntropyVector:
    """Entropy of every measurement record, in record order.

    Raises:
        InvalidInputError: No records, or duplicate labels
    """
    if not records:
        raise InvalidInputError("at least one measurement record is required")
    check_unique_labels(record.label for record in records)

    entries = [shannon_entropy(record.distribution).bits for record in records]
    logger.debug(
        "entropy_vector",
        state_label=state_label,
        labels=[record.label for record in records],
        entries=entries,
    )
    return EntropyVector.of(entries, state_label=state_label, parameter_a=parameter_a)
