"""Unit tests for distribution and entropy-vector schemas."""

import pytest
from pydantic import ValidationError

from jsentropy.core.exceptions import InvalidInputError
from jsentropy.schemas.distribution import EntropyValue, EntropyVector, ProbabilityDistribution
from jsentropy.schemas.shrinkage import ShrinkageConfig, Sigma2Mode


@pytest.mark.unit
class TestProbabilityDistribution:
    """Test ProbabilityDistribution construction."""

    def test_strict_accepts_exact_sum(self):
        """Test a distribution summing exactly to one."""
        dist = ProbabilityDistribution.strict([0.25, 0.25, 0.5])

        assert dist.n_outcomes == 3
        assert dist.as_array().sum() == pytest.approx(1.0)

    def test_strict_rejects_negative_entry(self):
        """Test that the error names the negative index."""
        with pytest.raises(InvalidInputError, match="index 1"):
            ProbabilityDistribution.strict([0.5, -0.1, 0.6])

    def test_strict_rejects_off_sum(self):
        """Test that strict mode rejects a short sum."""
        with pytest.raises(InvalidInputError, match="sum"):
            ProbabilityDistribution.strict([0.5, 0.4])

    def test_is_frozen(self):
        """Test that distributions are immutable."""
        dist = ProbabilityDistribution.strict([1.0])

        with pytest.raises(ValidationError):
            dist.probs = (0.5, 0.5)

    def test_empirical_renormalises_with_note(self):
        """Test lenient renormalisation and its note."""
        dist, note = ProbabilityDistribution.from_empirical([0.51, 0.51], tolerance=0.05)

        assert dist.probs == pytest.approx((0.5, 0.5))
        assert note is not None
        assert "renormalised" in note

    def test_empirical_exact_sum_has_no_note(self):
        """Test that a normalised input carries no note."""
        _, note = ProbabilityDistribution.from_empirical([0.5496, 0.446, 0.0044])

        assert note is None

    def test_empirical_rejects_sum_outside_tolerance(self):
        """Default lenient tolerance is 1e-3."""
        with pytest.raises(InvalidInputError, match="sum"):
            ProbabilityDistribution.from_empirical([0.51, 0.51])

    @pytest.mark.parametrize("values", [[0.51, 0.51], [1.02, 0.0], [0.49, 0.49]])
    def test_empirical_accepts_sum_at_tolerance(self, values):
        """Test that a sum exactly one tolerance away from 1 is accepted."""
        dist, note = ProbabilityDistribution.from_empirical(values, tolerance=0.02)

        assert sum(dist.probs) == pytest.approx(1.0)
        assert note is not None

    def test_empirical_rejects_sum_just_past_tolerance(self):
        """Test that 1.021 is rejected at tolerance 0.02."""
        with pytest.raises(InvalidInputError, match="sum"):
            ProbabilityDistribution.from_empirical([0.511, 0.51], tolerance=0.02)

    def test_empirical_rejects_negative(self):
        """Test that lenient mode still rejects negatives."""
        with pytest.raises(InvalidInputError, match="index 0"):
            ProbabilityDistribution.from_empirical([-0.01, 1.01], tolerance=0.1)

    def test_from_counts(self):
        """Test frequencies from outcome counts."""
        dist = ProbabilityDistribution.from_counts([30, 10, 0])

        assert dist.probs == pytest.approx((0.75, 0.25, 0.0))

    def test_from_counts_rejects_zero_total(self):
        """Test that empty counts are rejected."""
        with pytest.raises(InvalidInputError):
            ProbabilityDistribution.from_counts([0, 0])


@pytest.mark.unit
class TestEntropyVector:
    """Test EntropyVector validation."""

    def test_measured_vector_rejects_negative(self):
        """Test that measured entropies cannot be negative."""
        with pytest.raises(InvalidInputError, match="negative"):
            EntropyVector.of([1.0, -0.5, 0.2])

    def test_scaled_vector_may_be_negative(self, unit_vector):
        """Test that estimates may carry negative entries."""
        flipped = unit_vector.scaled(-0.5)

        assert flipped.estimate is True
        assert flipped.entries == (-0.5, -0.5, -0.5)
        assert flipped.state_label == "unit"

    def test_parameter_a_open_interval(self):
        """Test that a must lie inside (0, 1)."""
        with pytest.raises(InvalidInputError):
            EntropyVector.of([1.0], parameter_a=1.0)

    def test_entropy_value_capped_by_outcomes(self):
        """Test that entropy cannot exceed log2 of the outcome count."""
        with pytest.raises(ValidationError):
            EntropyValue(bits=1.5, outcomes=2)


@pytest.mark.unit
class TestShrinkageConfig:
    """Test ShrinkageConfig validation."""

    def test_default_mode_is_reference(self):
        """Test the default shrinkage configuration."""
        config = ShrinkageConfig()

        assert config.sigma2_mode == Sigma2Mode.FROM_REFERENCE
        assert config.positive_part is True

    def test_provided_requires_value(self):
        """Test that provided mode needs a sigma2."""
        with pytest.raises(ValidationError):
            ShrinkageConfig(sigma2_mode=Sigma2Mode.PROVIDED)

    def test_provided_helper(self):
        """Test the provided-mode constructor."""
        config = ShrinkageConfig.provided(0.2, positive_part=False)

        assert config.sigma2 == 0.2
        assert config.positive_part is False

    def test_negative_sigma2_rejected(self):
        """Test that negative sigma2 is rejected."""
        with pytest.raises(ValidationError):
            ShrinkageConfig.provided(-1.0)
