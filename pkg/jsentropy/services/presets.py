"""Named measurement-basis presets.

Presets are labelled stand-ins for measurement sets that are not given in
full. New presets can be added with
:meth:`BasisPresetFactory.register_preset`.
"""

import math
from typing import Callable

import numpy as np
import structlog

from jsentropy.core.config import settings
from jsentropy.core.exceptions import ParameterError
from jsentropy.schemas.quantum import MeasurementBasis

logger = structlog.stdlib.get_logger(__name__)

PresetBuilder = Callable[..., list[MeasurementBasis]]

_SQRT_HALF = math.sqrt(0.5)


def qubit_pauli() -> list[MeasurementBasis]:
    """Eigenbases of X, Y and Z: three mutually unbiased qubit measurements."""
    return [
        MeasurementBasis.of(label="X", vectors=np.array([[1, 1], [1, -1]]) * _SQRT_HALF),
        MeasurementBasis.of(label="Y", vectors=np.array([[1, 1j], [1, -1j]]) * _SQRT_HALF),
        MeasurementBasis.of(label="Z", vectors=np.eye(2)),
    ]


def spin1_table() -> list[MeasurementBasis]:
    """The single spin-1 basis of the worked probability table."""
    vectors = np.array(
        [
            [_SQRT_HALF, 0.0, _SQRT_HALF],
            [_SQRT_HALF, 0.0, -_SQRT_HALF],
            [0.0, 1.0, 0.0],
        ]
    )
    return [MeasurementBasis.of(label="table", vectors=vectors)]


def _spin1_indices() -> tuple[int, int, int]:
    zero = settings.STATE_INDEX_ZERO
    minus = settings.STATE_INDEX_MINUS_ONE
    other = ({0, 1, 2} - {zero, minus}).pop()
    return zero, minus, other


def spin1_family(a: float) -> list[MeasurementBasis]:
    """Three spin-1 measurements whose exact entropy sums follow the theory curves.

    On |0> the entropies are (h(a), 0, 1); on |-1> they are (h(a), 0, 0).
    """
    if not 0.0 <= a <= 1.0:
        raise ParameterError(f"family parameter a must lie in [0, 1], got {a}")
    zero, minus, other = _spin1_indices()
    ra, rb = math.sqrt(a), math.sqrt(1.0 - a)

    rotated = np.zeros((3, 3))
    rotated[0, zero], rotated[0, minus] = ra, rb
    rotated[1, zero], rotated[1, minus] = rb, -ra
    rotated[2, other] = 1.0

    half = np.zeros((3, 3))
    half[0, zero], half[0, other] = _SQRT_HALF, _SQRT_HALF
    half[1, zero], half[1, other] = _SQRT_HALF, -_SQRT_HALF
    half[2, minus] = 1.0

    return [
        MeasurementBasis.of(label="M1", vectors=rotated),
        MeasurementBasis.of(label="M2", vectors=np.eye(3)),
        MeasurementBasis.of(label="M3", vectors=half),
    ]


def _is_odd_prime(d: int) -> bool:
    return d > 2 and all(d % k for k in range(2, int(math.isqrt(d)) + 1))


def prime_mub(dim: int, count: int = 0) -> list[MeasurementBasis]:
    """Computational basis plus quadratic-phase bases for an odd prime dimension.

    Vector k of basis m has components w^(m j^2 + k j) / sqrt(d). Up to d + 1
    mutually unbiased bases; ``count`` = 0 returns all of them.
    """
    if not _is_odd_prime(dim):
        raise ParameterError(f"quadratic-phase MUBs need an odd prime dimension, got {dim}")
    total = dim + 1
    count = total if count == 0 else count
    if not 2 <= count <= total:
        raise ParameterError(f"dimension {dim} has at most {total} MUBs, asked for {count}")

    omega = np.exp(2j * np.pi / dim)
    j = np.arange(dim)
    bases = [MeasurementBasis.of(label="B0", vectors=np.eye(dim))]
    for m in range(count - 1):
        rows = [omega ** (m * j**2 + k * j) / math.sqrt(dim) for k in range(dim)]
        bases.append(MeasurementBasis.of(label=f"B{m + 1}", vectors=np.array(rows)))
    return bases


def fourier_pair(dim: int) -> list[MeasurementBasis]:
    """Computational and Fourier bases, unbiased in every dimension."""
    omega = np.exp(2j * np.pi / dim)
    j = np.arange(dim)
    fourier = np.array([omega ** (k * j) for k in range(dim)]) / math.sqrt(dim)
    return [
        MeasurementBasis.of(label="computational", vectors=np.eye(dim)),
        MeasurementBasis.of(label="fourier", vectors=fourier),
    ]


class BasisPresetFactory:
    """Registry of measurement-basis presets.

    Presets are looked up by name; keyword arguments are passed to the
    builder (e.g. ``a`` for ``spin1-family``, ``dim`` for ``fourier``).
    """

    # Registry of available presets
    _presets: dict[str, PresetBuilder] = {
        "qubit-pauli": qubit_pauli,
        "spin1-table": spin1_table,
        "spin1-family": spin1_family,
        "prime-mub": prime_mub,
        "fourier": fourier_pair,
    }

    @classmethod
    def create(cls, name: str, **kwargs) -> list[MeasurementBasis]:
        """Build the bases of a preset.

        Raises:
            ParameterError: Unknown preset, or builder arguments rejected
        """
        key = name.lower().strip()
        builder = cls._presets.get(key)
        if builder is None:
            available = ", ".join(cls.available())
            raise ParameterError(f"Unknown basis preset: '{name}'. Available presets: {available}")
        try:
            bases = builder(**kwargs)
        except TypeError as exc:
            raise ParameterError(f"bad arguments for preset '{key}': {exc}") from exc
        logger.debug("created basis preset", preset=key, count=len(bases))
        return bases

    @classmethod
    def register_preset(cls, name: str, builder: PresetBuilder) -> None:
        """Register a custom preset under ``name``."""
        cls._presets[name.lower().strip()] = builder
        logger.info("registered basis preset", preset=name)

    @classmethod
    def available(cls) -> list[str]:
        return sorted(cls._presets)
