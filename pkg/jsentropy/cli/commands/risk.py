"""``risk`` and ``sweep``: Monte-Carlo risk of LS and James-Stein estimators."""

from pathlib import Path
from typing import Optional

import click

from jsentropy.cli.common import emit, full_precision_option, handle_errors, output_option, parse_list
from jsentropy.schemas.risk import EstimatorKind, EstimatorRisk, RiskTrialConfig, SweepRow
from jsentropy.services.risk_service import dominance_sweep, simulate_risk, theta_from_scale
from jsentropy.services.table_service import render_rows

estimator_option = click.option(
    "--estimator",
    "estimators",
    type=click.Choice([kind.value for kind in EstimatorKind]),
    multiple=True,
    help="Estimator to include; repeat for several (default: all).",
)


@click.command("risk")
@click.option("--n", type=click.IntRange(min=1), required=True, help="Dimension.")
@click.option("--trials", type=click.IntRange(min=1), required=True)
@click.option("--seed", type=click.IntRange(min=0), required=True)
@click.option(
    "--theta-scale",
    type=click.FloatRange(min=0.0),
    default=0.0,
    show_default=True,
    help="|theta|.",
)
@click.option("--sigma", type=click.FloatRange(min=0.0, min_open=True), default=1.0, show_default=True)
@click.option(
    "--estimate-sigma2",
    is_flag=True,
    help="Estimate sigma^2 per trial instead of using the truth.",
)
@estimator_option
@full_precision_option
@output_option
@handle_errors
def risk_command(
    n: int,
    trials: int,
    seed: int,
    theta_scale: float,
    sigma: float,
    estimate_sigma2: bool,
    estimators: tuple[str, ...],
    full_precision: bool,
    output: Optional[Path],
) -> None:
    """Print risk, standard error and ratio to least squares per estimator."""
    kinds = frozenset(EstimatorKind(e) for e in estimators) if estimators else None
    config = RiskTrialConfig(
        n=n,
        theta=theta_from_scale(n, theta_scale),
        sigma=sigma,
        trials=trials,
        seed=seed,
        estimate_sigma2=estimate_sigma2,
        **({"estimators": kinds} if kinds else {}),
    )
    report = simulate_risk(config)
    emit(render_rows(report.risks, EstimatorRisk, full_precision), output)


@click.command("sweep")
@click.option(
    "--n",
    "n_values",
    callback=parse_list(int),
    default="3,5,10",
    show_default=True,
    help="Comma-separated dimensions.",
)
@click.option(
    "--theta-scales",
    callback=parse_list(float),
    default="0,1,10",
    show_default=True,
    help="Comma-separated |theta| values.",
)
@click.option("--sigma", type=click.FloatRange(min=0.0, min_open=True), default=1.0, show_default=True)
@click.option("--trials", type=click.IntRange(min=1), required=True)
@click.option("--seed", type=click.IntRange(min=0), required=True)
@click.option(
    "--estimate-sigma2",
    is_flag=True,
    help="Estimate sigma^2 per trial instead of using the truth.",
)
@full_precision_option
@output_option
@handle_errors
def sweep_command(
    n_values: list[int],
    theta_scales: list[float],
    sigma: float,
    trials: int,
    seed: int,
    estimate_sigma2: bool,
    full_precision: bool,
    output: Optional[Path],
) -> None:
    """Print a dominance table over dimensions and signal strengths."""
    rows = dominance_sweep(n_values, theta_scales, sigma, trials, seed, estimate_sigma2=estimate_sigma2)
    emit(render_rows(rows, SweepRow, full_precision), output)
