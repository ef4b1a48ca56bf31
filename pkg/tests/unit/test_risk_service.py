"""Unit tests for the Monte-Carlo estimator risk simulation."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from jsentropy.core.config import settings
from jsentropy.core.exceptions import DimensionError, ParameterError
from jsentropy.schemas.risk import EstimatorKind, RiskTrialConfig
from jsentropy.services.risk_service import _Moments, dominance_sweep, simulate_risk, theta_from_scale


def _config(n: int, scale: float = 0.0, trials: int = 20_000, seed: int = 7, **kwargs) -> RiskTrialConfig:
    return RiskTrialConfig(n=n, theta=theta_from_scale(n, scale), trials=trials, seed=seed, **kwargs)


@pytest.mark.unit
class TestRiskTrialConfig:
    """Test configuration validation."""

    def test_theta_length_must_match(self):
        """Test that theta must have n entries."""
        with pytest.raises(ValidationError):
            RiskTrialConfig(n=3, theta=(0.0, 0.0), trials=10)

    def test_sigma_must_be_positive(self):
        """Test that sigma must be positive."""
        with pytest.raises(ValidationError):
            RiskTrialConfig(n=3, theta=(0.0, 0.0, 0.0), sigma=0.0, trials=10)

    def test_theta_from_scale_norm(self):
        """Test that theta_from_scale hits the requested norm."""
        config = _config(4, scale=10.0)

        assert config.theta_norm == pytest.approx(10.0)


@pytest.mark.unit
class TestMoments:
    """Test chunked moment merging."""

    def test_merge_matches_numpy(self, rng):
        """Test chunked merging against numpy over the whole sample."""
        values = rng.normal(size=1000)
        moments = _Moments()
        for block in np.array_split(values, 7):
            moments.merge(block)

        assert moments.count == 1000
        assert moments.mean == pytest.approx(values.mean())
        assert moments.standard_error == pytest.approx(values.std(ddof=1) / math.sqrt(1000))

    def test_single_value_has_no_error(self):
        """Test that one value has an undefined standard error."""
        moments = _Moments()
        moments.merge(np.array([1.0]))

        assert math.isnan(moments.standard_error)


@pytest.mark.unit
class TestSimulateRisk:
    """Test per-estimator risk reports."""

    def test_least_squares_risk_is_n_sigma2(self):
        """Test LS risk n sigma^2 for n = 1."""
        config = _config(1, trials=100_000, estimators=frozenset({EstimatorKind.LS}))

        ls = simulate_risk(config).get(EstimatorKind.LS)

        assert ls.ratio_to_ls == 1.0
        assert abs(ls.risk - 1.0) < 4 * ls.standard_error

    def test_reproducible_for_seed(self):
        """Test that a seed reproduces the report exactly."""
        assert simulate_risk(_config(5)) == simulate_risk(_config(5))

    def test_seed_changes_result(self):
        """Test that different seeds change the risk."""
        first = simulate_risk(_config(5, seed=1)).get(EstimatorKind.JS).risk
        second = simulate_risk(_config(5, seed=2)).get(EstimatorKind.JS).risk

        assert first != second

    def test_chunking_keeps_trial_count(self, monkeypatch):
        """Test that uneven chunks still run every trial."""
        monkeypatch.setattr(settings, "RISK_CHUNK_SIZE", 3_000)

        report = simulate_risk(_config(4, trials=10_001))

        assert report.trials == 10_001
        assert report.get(EstimatorKind.LS).risk == pytest.approx(4.0, rel=0.05)

    def test_positive_part_not_worse(self):
        """Test that clamping never raises the risk."""
        report = simulate_risk(_config(5, trials=100_000))

        assert report.get(EstimatorKind.JS_POSITIVE_PART).risk <= report.get(EstimatorKind.JS).risk
        assert report.get(EstimatorKind.JS_POSITIVE_PART).clamp_rate > 0.0

    def test_large_signal_ratio_tends_to_one(self):
        """Test that shrinkage vanishes for a large signal."""
        report = simulate_risk(_config(3, scale=1000.0, trials=100_000))

        assert report.get(EstimatorKind.JS).ratio_to_ls == pytest.approx(1.0, abs=0.01)

    def test_small_noise_ratio_is_one(self):
        """Test that shrinkage vanishes for tiny noise."""
        report = simulate_risk(_config(3, scale=1.0, sigma=1e-4))

        assert report.get(EstimatorKind.JS).ratio_to_ls == pytest.approx(1.0, abs=1e-3)

    def test_ratio_without_requesting_ls(self):
        """Test that ratios are reported when LS is not requested."""
        config = _config(5, estimators=frozenset({EstimatorKind.JS}))

        report = simulate_risk(config)

        assert [risk.estimator for risk in report.risks] == [EstimatorKind.JS]
        assert report.get(EstimatorKind.JS).ratio_to_ls < 1.0

    def test_estimated_sigma2_still_shrinks(self):
        """Test that per-trial sigma2 estimates still beat LS."""
        report = simulate_risk(_config(10, trials=50_000, estimate_sigma2=True))

        assert report.estimate_sigma2 is True
        assert report.get(EstimatorKind.JS).ratio_to_ls < 1.0

    def test_js_needs_three_dimensions(self):
        """Test that JS estimators need n >= 3."""
        with pytest.raises(DimensionError):
            simulate_risk(_config(2))

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [3, 5, 10])
    def test_origin_ratio_is_two_over_n(self, n):
        """Test JS/LS risk ratio 2/n at the origin within 0.02."""
        report = simulate_risk(_config(n, trials=1_000_000))

        assert report.get(EstimatorKind.JS).ratio_to_ls == pytest.approx(2.0 / n, abs=0.02)


@pytest.fixture(scope="module")
def sweep_rows():
    """Sweep over n in {3, 5, 10} and |theta| in {0, 1, 10} at 1e5 trials."""
    return dominance_sweep([3, 5, 10], [0.0, 1.0, 10.0], sigma=1.0, trials=100_000, seed=11)


@pytest.mark.unit
class TestDominanceSweep:
    """Test the (n, |theta|) grid."""

    def test_rows_are_n_major(self):
        """Test that sweep rows are ordered by n, then scale."""
        rows = dominance_sweep([3, 4], [0.0, 1.0], sigma=1.0, trials=2_000, seed=5)

        cells = [(row.n, row.theta_norm) for row in rows if row.estimator == EstimatorKind.LS]
        assert cells == [(3, 0.0), (3, pytest.approx(1.0)), (4, 0.0), (4, pytest.approx(1.0))]
        assert len(rows) == 12

    def test_small_n_has_least_squares_only(self):
        """Test that n < 3 cells only report LS."""
        rows = dominance_sweep([2], [0.0], sigma=1.0, trials=1_000, seed=5)

        assert [row.estimator for row in rows] == [EstimatorKind.LS]
        assert rows[0].dominates is None

    def test_rejects_negative_scale(self):
        """Test that negative theta scales are rejected."""
        with pytest.raises(ParameterError):
            dominance_sweep([3], [-1.0], sigma=1.0, trials=10, seed=0)

    def test_rejects_empty_grid(self):
        """Test that an empty grid is rejected."""
        with pytest.raises(ParameterError):
            dominance_sweep([], [0.0], sigma=1.0, trials=10, seed=0)

    def test_reproducible(self):
        """Test that a sweep repeats for a fixed seed."""
        first = dominance_sweep([3], [0.0, 10.0], sigma=1.0, trials=5_000, seed=3)

        assert first == dominance_sweep([3], [0.0, 10.0], sigma=1.0, trials=5_000, seed=3)

    @pytest.mark.slow
    def test_shrinkage_dominates_every_cell(self, sweep_rows):
        """Test that JS beats LS by 3 paired SE in every cell."""
        shrinkage_rows = [row for row in sweep_rows if row.estimator != EstimatorKind.LS]

        assert len(shrinkage_rows) == 18
        assert all(row.dominates for row in shrinkage_rows)

    @pytest.mark.slow
    def test_least_squares_risk_in_every_cell(self, sweep_rows):
        """Test that LS risk is within 4 SE of n sigma^2 in every cell."""
        ls_rows = [row for row in sweep_rows if row.estimator == EstimatorKind.LS]

        assert len(ls_rows) == 9
        for row in ls_rows:
            assert abs(row.risk - row.n * row.sigma**2) <= 4 * row.standard_error

    @pytest.mark.slow
    def test_positive_part_not_worse_in_every_cell(self, sweep_rows):
        """Test that positive-part risk never exceeds raw JS risk beyond 2 SE."""
        cells = {}
        for row in sweep_rows:
            cells.setdefault((row.n, row.theta_norm), {})[row.estimator] = row

        assert len(cells) == 9
        for cell in cells.values():
            raw = cell[EstimatorKind.JS]
            clamped = cell[EstimatorKind.JS_POSITIVE_PART]
            margin = 2 * math.hypot(raw.standard_error, clamped.standard_error)
            assert clamped.risk <= raw.risk + margin
