"""``shrink``: James-Stein shrinkage of each record's entropy vector."""

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
from jsentropy.schemas.experiment import ShrinkRow
from jsentropy.services.experiment_service import load_experiment, shrink_rows
from jsentropy.services.table_service import render_rows


@click.command("shrink")
@input_argument
@shrinkage_options
@loading_options
@full_precision_option
@output_option
@handle_errors
def command(
    path: Path,
    sigma2: Optional[float],
    sigma_mode: Optional[str],
    no_positive_part: bool,
    strict: bool,
    tolerance: Optional[float],
    full_precision: bool,
    output: Optional[Path],
) -> None:
    """Print raw and shrunk entropies per measurement."""
    config = build_shrinkage_config(sigma2, sigma_mode, no_positive_part)
    experiment = load_experiment(path, strict=strict, tolerance=tolerance)
    rows, errors = shrink_rows(experiment, config)
    report_record_errors(errors, len(rows))
    emit(render_rows(rows, ShrinkRow, full_precision), output)
