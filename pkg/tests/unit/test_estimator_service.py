"""Unit tests for least-squares and James-Stein estimators."""

import numpy as np
import pytest

from jsentropy.core.exceptions import DegenerateInputError, DimensionError, InvalidInputError
from jsentropy.schemas.distribution import EntropyVector
from jsentropy.schemas.shrinkage import ShrinkageConfig, Sigma2Mode
from jsentropy.services.estimator_service import (
    estimate_sigma2,
    james_stein,
    js_factor,
    least_squares,
    resolve_sigma2,
    sample_variance_sigma2,
    shrinkage_factors,
    stretched_theory,
    sum_entropies,
)


@pytest.mark.unit
class TestJamesSteinFactor:
    """Test the shrinkage factor."""

    def test_factor_for_unit_vector(self, unit_vector):
        """1 - (3 - 2) * 0.3 / 3 = 0.9."""
        factor, clamped = js_factor(unit_vector, 0.3)

        assert factor == pytest.approx(0.9)
        assert clamped is False

    def test_unit_noise_on_unit_vector(self, unit_vector):
        """Test factor 2/3 and shrunk sum 2 for sigma2 = 1."""
        result = james_stein(unit_vector, ShrinkageConfig.provided(1.0))

        assert result.factor == pytest.approx(2.0 / 3.0)
        assert result.sum_shrunk == pytest.approx(2.0)

    def test_reference_variance_near_identity(self):
        """Test reference-mode sigma2 on a vector close to its reference."""
        y = EntropyVector.of([1.02, 1.01, 0.99])
        reference = EntropyVector.of([1.0, 1.0, 1.0])

        result = james_stein(y, ShrinkageConfig(), reference)

        assert result.sigma2_used == pytest.approx(2e-4)
        assert result.factor == pytest.approx(0.999934, abs=1e-6)
        assert result.sum_shrunk == pytest.approx(3.0198, abs=1e-4)

    def test_zero_variance_is_identity(self, unit_vector):
        """Test that zero noise leaves the vector unchanged."""
        result = james_stein(unit_vector, ShrinkageConfig.provided(0.0))

        assert result.factor == 1.0
        assert result.shrunk.entries == unit_vector.entries
        assert result.sum_shrunk == result.sum_raw

    def test_positive_part_clamps(self, unit_vector):
        """Raw factor is 1 - 6 / 3 = -1."""
        factor, clamped = js_factor(unit_vector, 6.0)

        assert factor == 0.0
        assert clamped is True

    def test_raw_factor_may_be_negative(self, unit_vector):
        """Test that the unclamped factor can flip signs."""
        result = james_stein(unit_vector, ShrinkageConfig.provided(6.0, positive_part=False))

        assert result.factor == pytest.approx(-1.0)
        assert result.shrunk.entries == pytest.approx((-1.0, -1.0, -1.0))
        assert result.shrunk.estimate is True

    def test_rejects_small_dimension(self):
        """Test that fewer than three parameters are rejected."""
        with pytest.raises(DimensionError, match="n >= 3"):
            js_factor(EntropyVector.of([1.0, 0.5]), 0.1)

    def test_rejects_zero_vector(self):
        """Test that the zero vector is degenerate."""
        with pytest.raises(DegenerateInputError):
            js_factor(EntropyVector.of([0.0, 0.0, 0.0]), 0.1)

    def test_rejects_negative_sigma2(self, unit_vector):
        """Test that negative noise variance is rejected."""
        with pytest.raises(InvalidInputError):
            js_factor(unit_vector, -0.1)

    def test_factor_at_most_one(self, rng):
        """Test that the positive-part factor lies in [0, 1]."""
        for _ in range(100):
            y = EntropyVector.of(rng.uniform(0.0, 2.0, size=int(rng.integers(3, 10))))
            factor, _ = js_factor(y, float(rng.uniform(0.0, 1.0)))
            assert 0.0 <= factor <= 1.0


@pytest.mark.unit
class TestShrinkageFactorsArray:
    """Test the vectorised factor used by the risk simulation."""

    def test_rows_match_scalar_path(self, rng):
        """Test row factors against the closed form."""
        y = rng.normal(size=(20, 5))

        factors, _ = shrinkage_factors(y, 0.5)

        for row, factor in zip(y, factors):
            norm2 = float(row @ row)
            assert factor == pytest.approx(max(0.0, 1.0 - 3 * 0.5 / norm2))

    def test_zero_row_goes_to_zero(self):
        """Test that a zero row clamps to factor 0."""
        factors, clamped = shrinkage_factors(np.zeros((1, 3)), 1.0)

        assert factors[0] == 0.0
        assert bool(clamped[0]) is True


@pytest.mark.unit
class TestSigma2Sources:
    """Test the noise-variance estimators."""

    def test_reference_variance(self):
        """Test the mean squared deviation from a reference."""
        y = EntropyVector.of([1.0, 2.0, 3.0])
        reference = EntropyVector.of([1.0, 1.0, 1.0])

        assert estimate_sigma2(y, reference) == pytest.approx(5.0 / 3.0)

    def test_reference_length_mismatch(self):
        """Test that references of another length are rejected."""
        with pytest.raises(InvalidInputError):
            estimate_sigma2(EntropyVector.of([1.0, 2.0, 3.0]), EntropyVector.of([1.0]))

    def test_sample_variance_uses_population_divisor(self):
        """Test the 1/n divisor of the sample variance."""
        assert sample_variance_sigma2(EntropyVector.of([1.0, 2.0, 3.0])) == pytest.approx(2.0 / 3.0)

    def test_resolve_reference_requires_reference(self, unit_vector):
        """Test that reference mode without a reference is rejected."""
        with pytest.raises(InvalidInputError):
            resolve_sigma2(unit_vector, ShrinkageConfig(sigma2_mode=Sigma2Mode.FROM_REFERENCE))

    def test_resolve_sample(self, unit_vector):
        """Test that a constant vector has zero sample variance."""
        config = ShrinkageConfig(sigma2_mode=Sigma2Mode.SAMPLE_VARIANCE)

        assert resolve_sigma2(unit_vector, config) == 0.0

    def test_result_records_source(self):
        """Test that the result echoes the sigma2 source."""
        y = EntropyVector.of([1.0, 2.0, 3.0])
        result = james_stein(y, ShrinkageConfig(sigma2_mode=Sigma2Mode.SAMPLE_VARIANCE))

        assert result.sigma2_source == Sigma2Mode.SAMPLE_VARIANCE
        assert result.sigma2_used == pytest.approx(2.0 / 3.0)
        assert result.sum_shrunk == pytest.approx(result.factor * 6.0)


@pytest.mark.unit
class TestShrinkageProperties:
    """Test properties of the shrinkage factor over random vectors."""

    def test_factor_for_sparse_vector(self):
        """Test 1 - 3 * 2 / 25 = 0.76 for (3, 4, 0, 0, 0)."""
        factor, clamped = js_factor(EntropyVector.of([3.0, 4.0, 0.0, 0.0, 0.0]), 2.0)

        assert factor == pytest.approx(0.76)
        assert clamped is False

    def test_large_noise_clamps_to_zero(self, unit_vector):
        """Test that sigma2 = 10 on (1, 1, 1) clamps the factor to 0."""
        factor, clamped = js_factor(unit_vector, 10.0, positive_part=True)

        assert factor == 0.0
        assert clamped is True

    def test_scaling_up_weakens_shrinkage(self, rng):
        """Test js_factor(c * y) >= js_factor(y) for c > 1."""
        for _ in range(200):
            values = rng.uniform(0.0, 2.0, size=int(rng.integers(3, 10)))
            sigma2 = float(rng.uniform(0.0, 1.0))
            c = float(rng.uniform(1.0, 5.0))

            base, _ = js_factor(EntropyVector.of(values), sigma2)
            scaled, _ = js_factor(EntropyVector.of(c * values), sigma2)

            assert scaled >= base

    def test_shrinkage_preserves_direction(self, rng):
        """Test that shrunk vectors keep the direction and largest entries of y."""
        checked = 0
        for _ in range(200):
            values = rng.uniform(0.0, 2.0, size=int(rng.integers(3, 10)))
            y = EntropyVector.of(values)

            result = james_stein(y, ShrinkageConfig.provided(float(rng.uniform(0.0, 0.5))))
            if result.factor <= 0.0:
                continue
            checked += 1
            shrunk = result.shrunk.as_array()

            assert shrunk == pytest.approx(result.factor * values, rel=1e-12)
            assert set(np.flatnonzero(shrunk == shrunk.max())) == set(np.flatnonzero(values == values.max()))
            assert shrunk / np.linalg.norm(shrunk) == pytest.approx(values / np.linalg.norm(values))
        assert checked > 0

    def test_shrunk_sum_never_exceeds_raw(self, rng):
        """Test sum_shrunk <= sum_raw for nonnegative entries with positive-part shrinkage."""
        for _ in range(100):
            y = EntropyVector.of(rng.uniform(0.0, 2.0, size=5))

            result = james_stein(y, ShrinkageConfig.provided(float(rng.uniform(0.0, 1.0))))

            assert result.sum_shrunk <= result.sum_raw
            assert result.sum_shrunk == pytest.approx(result.factor * result.sum_raw, rel=1e-12)

    def test_reference_variance_of_unit_offset(self):
        """Test sigma2 = 1 for a constant unit deviation."""
        y = EntropyVector.of([2.0, 2.0, 2.0])

        assert estimate_sigma2(y, EntropyVector.of([1.0, 1.0, 1.0])) == pytest.approx(1.0)
        assert estimate_sigma2(y, y) == 0.0


@pytest.mark.unit
class TestHelpers:
    """Test small helpers."""

    def test_least_squares_is_identity(self, unit_vector):
        """Test that least squares returns the observation."""
        assert least_squares(unit_vector) is unit_vector

    def test_sum_entropies(self):
        """Test the entropy sum."""
        assert sum_entropies(EntropyVector.of([0.1, 0.2, 0.3])) == pytest.approx(0.6)

    def test_stretched_theory(self):
        """Test the inverse-factor stretch and its undefined case."""
        assert stretched_theory(1.8, 0.9) == pytest.approx(2.0)
        assert stretched_theory(1.8, 0.0) is None
