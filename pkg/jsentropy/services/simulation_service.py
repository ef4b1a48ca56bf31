"""Born-rule measurement simulation with depolarizing noise and finite shots.

Exact Born probabilities are the oracle for the bound checks; depolarizing
noise plus multinomial sampling produces experiment-like records. Sampling
takes its seed explicitly and keeps no generator state between calls.
"""

from typing import Optional

import numpy as np
import structlog

from jsentropy.core.config import settings
from jsentropy.core.exceptions import DimensionError, InvalidInputError, ParameterError
from jsentropy.schemas.distribution import MeasurementRecord, ProbabilityDistribution
from jsentropy.schemas.quantum import DensityMatrix, MeasurementBasis, NoiseModel, ShotSample, StateVector
from jsentropy.services.entropy_service import TheoryState, check_unique_labels

logger = structlog.stdlib.get_logger(__name__)


def born_probabilities(rho: DensityMatrix, basis: MeasurementBasis) -> ProbabilityDistribution:
    """p_i = <v_i| rho |v_i> for every vector of the basis."""
    if rho.dim != basis.dim:
        raise DimensionError(
            f"state has dimension {rho.dim} but basis '{basis.label}' has dimension {basis.dim}"
        )
    vectors = basis.vectors
    amplitudes = np.einsum("ij,jk,ik->i", vectors.conj(), rho.entries, vectors)

    tol = settings.MATRIX_TOLERANCE
    worst_imag = float(np.max(np.abs(amplitudes.imag)))
    if worst_imag > tol:
        raise InvalidInputError(f"Born probabilities have imaginary part {worst_imag:.3g}")
    probs = amplitudes.real
    if float(probs.min()) < -tol:
        raise InvalidInputError(f"negative Born probability {float(probs.min()):.3g}")
    return ProbabilityDistribution.strict(np.clip(probs, 0.0, 1.0))


def apply_depolarizing(rho: DensityMatrix, p: float) -> DensityMatrix:
    """(1 - p) rho + p I / dim."""
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"depolarizing probability must lie in [0, 1], got {p}")
    mixed = np.eye(rho.dim) / rho.dim
    return DensityMatrix.of(entries=(1.0 - p) * rho.entries + p * mixed)


def sample_counts(dist: ProbabilityDistribution, shots: int, seed: int) -> ShotSample:
    """Multinomial draw of ``shots`` outcomes, reproducible for a given seed."""
    if shots < 1:
        raise ParameterError(f"shots must be at least 1, got {shots}")
    if seed < 0:
        raise ParameterError(f"seed must be unsigned, got {seed}")
    probs = dist.as_array()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs / probs.sum())
    return ShotSample(counts=tuple(int(c) for c in counts), shots=shots, seed=seed)


def derive_seeds(seed: int, count: int) -> list[int]:
    """Independent child seeds of ``seed``, stable across runs."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(child.generate_state(1)[0]) for child in children]


def generate_experiment(
    state: StateVector,
    bases: list[MeasurementBasis],
    noise: NoiseModel,
    shots: Optional[int] = None,
    seed: int = 0,
) -> list[MeasurementRecord]:
    """Measurement records for one prepared state.

    Each basis sees the depolarized state; with ``shots`` the exact Born
    probabilities are replaced by sampled frequencies, each basis drawing
    from its own child seed.
    """
    if not bases:
        raise InvalidInputError("at least one measurement basis is required")
    check_unique_labels(basis.label for basis in bases)

    if shots is not None and shots < 1:
        raise ParameterError(f"shots must be at least 1, got {shots}")

    rho = apply_depolarizing(DensityMatrix.from_state(state), noise.depolarizing_p)
    seeds = derive_seeds(seed, len(bases)) if shots is not None else [None] * len(bases)

    records = []
    for basis, child_seed in zip(bases, seeds):
        dist = born_probabilities(rho, basis)
        note = None
        if shots is not None:
            sample = sample_counts(dist, shots, child_seed)
            dist = ProbabilityDistribution.from_counts(sample.counts)
            note = f"sampled {shots} shots with seed {child_seed}"
        records.append(MeasurementRecord(label=basis.label, distribution=dist, note=note))

    logger.info(
        "generated experiment",
        bases=[basis.label for basis in bases],
        depolarizing_p=noise.depolarizing_p,
        shots=shots,
        seed=seed,
    )
    return records


def computational_state(dim: int, index: int) -> StateVector:
    """Basis state |index> of the computational basis."""
    if not 0 <= index < dim:
        raise ParameterError(f"index {index} out of range for dimension {dim}")
    amplitudes = np.zeros(dim, dtype=complex)
    amplitudes[index] = 1.0
    return StateVector.of(amplitudes=amplitudes)


def spin1_state(state: TheoryState) -> StateVector:
    """The spin-1 states |0> and |-1>, placed by the configured indices."""
    index = settings.STATE_INDEX_ZERO if state == TheoryState.ZERO else settings.STATE_INDEX_MINUS_ONE
    return computational_state(3, index)


def random_pure_state(dim: int, rng: np.random.Generator) -> StateVector:
    """Haar-random pure state from a normalised complex Gaussian vector."""
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return StateVector.of(amplitudes=z / np.linalg.norm(z))


def random_density_matrix(
    dim: int,
    rng: np.random.Generator,
    rank: Optional[int] = None,
) -> DensityMatrix:
    """Random mixed state G G^dagger / tr from a complex Ginibre matrix."""
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2.0
    return DensityMatrix.of(entries=rho / np.trace(rho).real)
