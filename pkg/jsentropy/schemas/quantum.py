"""Pydantic schemas for states, measurements, noise and bound reports.

Matrices and vectors are held as read-only complex numpy arrays; the
validators run the physical checks (Hermiticity, unit trace, positivity,
orthonormality) with ``settings.MATRIX_TOLERANCE``.
"""

from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from jsentropy.core.config import settings
from jsentropy.core.exceptions import InvalidInputError, describe_validation_error


def _frozen_array(value: Any, ndim: int) -> np.ndarray:
    arr = np.array(value, dtype=complex, copy=True)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-dimensional array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("array holds non-finite values")
    arr.setflags(write=False)
    return arr


def _check_dimension(dim: int) -> None:
    if dim < 2:
        raise ValueError(f"dimension must be at least 2, got {dim}")
    if dim > settings.MAX_DIMENSION:
        raise ValueError(f"dimension {dim} exceeds the supported maximum {settings.MAX_DIMENSION}")


class _ArrayModel(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @classmethod
    def of(cls, **data: Any):
        """Construct, raising InvalidInputError instead of a pydantic error."""
        try:
            return cls(**data)
        except ValidationError as exc:
            raise InvalidInputError(
                f"invalid {cls.__name__}: {describe_validation_error(exc)}"
            ) from exc


class StateVector(_ArrayModel):
    """Normalised pure state |psi>."""

    amplitudes: np.ndarray = Field(..., description="Complex amplitudes")

    @field_validator("amplitudes", mode="before")
    @classmethod
    def check_amplitudes(cls, v: Any) -> np.ndarray:
        arr = _frozen_array(v, ndim=1)
        _check_dimension(arr.shape[0])
        norm2 = float(np.vdot(arr, arr).real)
        if abs(norm2 - 1.0) > settings.MATRIX_TOLERANCE:
            raise ValueError(f"squared norm is {norm2!r}, not 1")
        return arr

    @property
    def dim(self) -> int:
        return int(self.amplitudes.shape[0])


class DensityMatrix(_ArrayModel):
    """Hermitian, unit-trace, positive-semidefinite operator."""

    entries: np.ndarray = Field(..., description="dim x dim complex matrix")

    @field_validator("entries", mode="before")
    @classmethod
    def check_entries(cls, v: Any) -> np.ndarray:
        arr = _frozen_array(v, ndim=2)
        if arr.shape[0] != arr.shape[1]:
            raise ValueError(f"matrix is not square: shape {arr.shape}")
        _check_dimension(arr.shape[0])

        tol = settings.MATRIX_TOLERANCE
        deviation = float(np.max(np.abs(arr - arr.conj().T)))
        if deviation > tol:
            raise ValueError(f"hermiticity check failed: max |rho - rho^dagger| = {deviation:.3g}")
        trace = complex(np.trace(arr))
        if abs(trace - 1.0) > tol:
            raise ValueError(f"trace check failed: trace = {trace}")
        smallest = float(np.linalg.eigvalsh(arr).min())
        if smallest < -tol:
            raise ValueError(f"positivity check failed: eigenvalue {smallest:.3g}")
        return arr

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    def eigenvalues(self) -> np.ndarray:
        """Spectrum in ascending order, tiny negative noise clamped to 0."""
        return np.clip(np.linalg.eigvalsh(self.entries), 0.0, None)

    @classmethod
    def from_state(cls, state: StateVector) -> "DensityMatrix":
        """|psi><psi|."""
        psi = state.amplitudes
        return cls(entries=np.outer(psi, psi.conj()))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls.of(entries=np.eye(dim) / dim)

    @classmethod
    def diagonal(cls, weights: "list[float] | np.ndarray") -> "DensityMatrix":
        return cls.of(entries=np.diag(np.asarray(weights, dtype=float)))


class MeasurementBasis(_ArrayModel):
    """Complete projective measurement given by dim orthonormal vectors.

    ``vectors`` holds one basis vector per row.
    """

    label: str = Field(..., min_length=1)
    vectors: np.ndarray = Field(..., description="Rows are orthonormal basis vectors")

    @field_validator("vectors", mode="before")
    @classmethod
    def check_vectors(cls, v: Any) -> np.ndarray:
        arr = _frozen_array(v, ndim=2)
        count, dim = arr.shape
        _check_dimension(dim)
        if count != dim:
            raise ValueError(f"a complete measurement needs {dim} vectors, got {count}")
        gram = arr.conj() @ arr.T
        deviation = float(np.max(np.abs(gram - np.eye(dim))))
        if deviation > settings.MATRIX_TOLERANCE:
            raise ValueError(f"vectors are not orthonormal: max Gram deviation {deviation:.3g}")
        return arr

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])


class NoiseModel(BaseModel):
    """Single-parameter depolarizing noise standing in for decoherence."""

    model_config = ConfigDict(frozen=True)

    depolarizing_p: float = Field(0.0, ge=0.0, le=1.0)


class ShotSample(BaseModel):
    """Outcome counts of a finite-shot multinomial draw."""

    model_config = ConfigDict(frozen=True)

    counts: tuple[int, ...] = Field(..., min_length=1)
    shots: int = Field(..., ge=1)
    seed: int = Field(..., ge=0)

    @model_validator(mode="after")
    def check_counts(self) -> "ShotSample":
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be nonnegative")
        if sum(self.counts) != self.shots:
            raise ValueError(f"counts sum to {sum(self.counts)}, expected {self.shots}")
        return self

    def frequencies(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float) / self.shots


class BoundReport(BaseModel):
    """Entropy sums checked against the multi-observable lower bound.

    ``slack_* = sum_* - bound_value``; a relation counts as satisfied when its
    slack is at least ``-settings.SATISFACTION_TOLERANCE``.
    """

    model_config = ConfigDict(frozen=True)

    bound_value: float
    b_used: float = Field(..., gt=0.0, le=1.0)
    b_source: str = Field("max-overlap", description="'override' or 'max-overlap'")
    n: int = Field(..., ge=1)
    von_neumann: float = Field(..., ge=0.0)
    sigma2: float = Field(0.0, ge=0.0)
    factor: float = 1.0
    sum_raw: float
    sum_js: float
    satisfied_raw: bool
    satisfied_js: bool
    slack_raw: float
    slack_js: float
    state_label: Optional[str] = None
