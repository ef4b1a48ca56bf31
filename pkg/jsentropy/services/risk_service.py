"""Monte-Carlo check that James-Stein shrinkage dominates least squares.

Trials run in fixed-size blocks. Block i draws from the i-th child of
``SeedSequence(seed)`` and block moments are merged in block order, so a
given configuration reproduces bit for bit on the same build.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np
import structlog

from jsentropy.core.config import settings
from jsentropy.core.exceptions import ParameterError
from jsentropy.schemas.risk import (
    ESTIMATOR_ORDER,
    EstimatorKind,
    EstimatorRisk,
    RiskReport,
    RiskTrialConfig,
    SweepRow,
)
from jsentropy.services.estimator_service import check_js_dimension, shrinkage_factors

logger = structlog.stdlib.get_logger(__name__)

# Paired standard errors required before a cell counts as dominated.
DOMINANCE_SE = 3.0


@dataclass
class _Moments:
    """Running count, mean and sum of squared deviations."""

    count: int = 0
    mean: float = 0.0
    m2: float = 0.0

    def merge(self, values: np.ndarray) -> None:
        k = int(values.size)
        if k == 0:
            return
        block_mean = float(values.mean())
        block_m2 = float(np.sum((values - block_mean) ** 2))
        total = self.count + k
        delta = block_mean - self.mean
        self.mean += delta * k / total
        self.m2 += block_m2 + delta * delta * self.count * k / total
        self.count = total

    @property
    def standard_error(self) -> float:
        if self.count < 2:
            return float("nan")
        return math.sqrt(self.m2 / (self.count - 1) / self.count)


def theta_from_scale(n: int, scale: float) -> tuple[float, ...]:
    """theta = scale * (1, ..., 1) / sqrt(n), so |theta| = scale."""
    return tuple([scale / math.sqrt(n)] * n)


def _estimate(
    kind: EstimatorKind,
    y: np.ndarray,
    sigma2: "float | np.ndarray",
) -> tuple[np.ndarray, np.ndarray]:
    if kind == EstimatorKind.LS:
        return y, np.zeros(y.shape[0], dtype=bool)
    factors, clamped = shrinkage_factors(y, sigma2, positive_part=kind == EstimatorKind.JS_POSITIVE_PART)
    return factors[:, None] * y, clamped


def simulate_risk(config: RiskTrialConfig) -> RiskReport:
    """Empirical risk of each configured estimator.

    The true sigma^2 is handed to the shrinkage estimators unless
    ``estimate_sigma2`` asks for the per-trial mean squared deviation from
    theta instead.

    Raises:
        DimensionError: A James-Stein estimator requested with n < 3
    """
    kinds = [kind for kind in ESTIMATOR_ORDER if kind in config.estimators]
    if any(kind != EstimatorKind.LS for kind in kinds):
        check_js_dimension(config.n)

    theta = np.asarray(config.theta, dtype=float)
    sigma2 = config.sigma**2
    chunk = settings.RISK_CHUNK_SIZE
    blocks = math.ceil(config.trials / chunk)
    children = np.random.SeedSequence(config.seed).spawn(blocks)

    errors = {kind: _Moments() for kind in ESTIMATOR_ORDER}
    diffs = {kind: _Moments() for kind in ESTIMATOR_ORDER}
    clamps = {kind: 0 for kind in ESTIMATOR_ORDER}

    for block, child in enumerate(children):
        size = min(chunk, config.trials - block * chunk)
        rng = np.random.default_rng(child)
        noise = rng.standard_normal((size, config.n)) * config.sigma
        y = theta + noise
        trial_sigma2 = np.mean(noise**2, axis=1) if config.estimate_sigma2 else sigma2

        ls_error = np.sum(noise**2, axis=1)
        for kind in kinds:
            estimate, clamped = _estimate(kind, y, trial_sigma2)
            error = ls_error if kind == EstimatorKind.LS else np.sum((estimate - theta) ** 2, axis=1)
            errors[kind].merge(error)
            diffs[kind].merge(ls_error - error)
            clamps[kind] += int(clamped.sum())
        # LS risk is the denominator of every ratio, requested or not.
        if EstimatorKind.LS not in kinds:
            errors[EstimatorKind.LS].merge(ls_error)

    ls_risk = errors[EstimatorKind.LS].mean
    risks = []
    for kind in kinds:
        moments = errors[kind]
        risks.append(
            EstimatorRisk(
                estimator=kind,
                risk=max(moments.mean, 0.0),
                standard_error=moments.standard_error,
                ratio_to_ls=moments.mean / ls_risk if ls_risk > 0 else float("nan"),
                diff_vs_ls=diffs[kind].mean,
                diff_se=diffs[kind].standard_error if kind != EstimatorKind.LS else 0.0,
                clamp_rate=clamps[kind] / config.trials,
            )
        )

    report = RiskReport(
        n=config.n,
        theta_norm=config.theta_norm,
        sigma=config.sigma,
        trials=config.trials,
        seed=config.seed,
        estimate_sigma2=config.estimate_sigma2,
        risks=risks,
    )
    logger.info(
        "simulated risk",
        n=config.n,
        theta_norm=report.theta_norm,
        trials=config.trials,
        ratios={r.estimator.value: r.ratio_to_ls for r in risks},
    )
    return report


def dominance_sweep(
    n_values: Iterable[int],
    theta_scales: Iterable[float],
    sigma: float,
    trials: int,
    seed: int,
    estimators: Optional[frozenset[EstimatorKind]] = None,
    estimate_sigma2: bool = False,
) -> list[SweepRow]:
    """Risk reports over a grid of dimensions and signal strengths.

    Cells are visited n-major; cell i uses the i-th child of ``seed``.
    Cells with n < 3 carry only the least-squares row.
    """
    n_values = list(n_values)
    theta_scales = list(theta_scales)
    if not n_values or not theta_scales:
        raise ParameterError("the sweep needs at least one n and one theta scale")
    if any(scale < 0 for scale in theta_scales):
        raise ParameterError("theta scales must be nonnegative")
    kinds = estimators or frozenset(ESTIMATOR_ORDER)

    cells = [(n, scale) for n in n_values for scale in theta_scales]
    seeds = np.random.SeedSequence(seed).spawn(len(cells))
    rows: list[SweepRow] = []
    for (n, scale), child in zip(cells, seeds):
        cell_kinds = kinds if n >= 3 else frozenset({EstimatorKind.LS})
        if cell_kinds != kinds:
            logger.warning("shrinkage rows skipped", n=n, reason="n < 3")
        config = RiskTrialConfig(
            n=n,
            theta=theta_from_scale(n, scale),
            sigma=sigma,
            trials=trials,
            seed=int(child.generate_state(1)[0]),
            estimators=cell_kinds,
            estimate_sigma2=estimate_sigma2,
        )
        report = simulate_risk(config)
        for risk in report.risks:
            shrinkage = risk.estimator != EstimatorKind.LS
            rows.append(
                SweepRow(
                    n=n,
                    theta_norm=report.theta_norm,
                    sigma=sigma,
                    trials=trials,
                    estimator=risk.estimator,
                    risk=risk.risk,
                    standard_error=risk.standard_error,
                    ratio_to_ls=risk.ratio_to_ls,
                    diff_vs_ls=risk.diff_vs_ls,
                    diff_se=risk.diff_se,
                    dominates=(risk.diff_vs_ls > DOMINANCE_SE * risk.diff_se) if shrinkage else None,
                )
            )
    return rows
