"""``report``: the full comparison pipeline."""

from pathlib import Path
from typing import Optional

import click

from jsentropy.cli.common import (
    build_shrinkage_config,
    emit,
    full_precision_option,
    handle_errors,
    input_argument,
    loading_options,
    output_option,
    report_record_errors,
    shrinkage_options,
)
from jsentropy.schemas.experiment import ComparisonRow
from jsentropy.services.experiment_service import load_experiment, run_pipeline
from jsentropy.services.table_service import render_rows


@click.command("report")
@input_argument
@shrinkage_options
@click.option("--no-theory", is_flag=True, help="Skip the theory comparison columns.")
@loading_options
@full_precision_option
@output_option
@handle_errors
def command(
    path: Path,
    sigma2: Optional[float],
    sigma_mode: Optional[str],
    no_positive_part: bool,
    no_theory: bool,
    strict: bool,
    tolerance: Optional[float],
    full_precision: bool,
    output: Optional[Path],
) -> None:
    """Print experimental, shrunk and theoretical entropy sums per record."""
    config = build_shrinkage_config(sigma2, sigma_mode, no_positive_part)
    experiment = load_experiment(path, strict=strict, tolerance=tolerance)
    result = run_pipeline(experiment, config, theory=not no_theory)
    report_record_errors(result.errors, len(result.rows))
    emit(render_rows(result.rows, ComparisonRow, full_precision), output)
