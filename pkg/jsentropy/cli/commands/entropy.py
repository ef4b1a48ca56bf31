"""``entropy``: Shannon entropy of every measurement in a file."""

from pathlib import Path
from typing import Optional

import click

from jsentropy.cli.common import (
    emit,
    full_precision_option,
    handle_errors,
    input_argument,
    loading_options,
    output_option,
)
from jsentropy.schemas.experiment import EntropyRow
from jsentropy.services.experiment_service import entropy_rows, load_experiment
from jsentropy.services.table_service import render_rows


@click.command("entropy")
@input_argument
@click.option(
    "--renyi",
    "alpha",
    type=float,
    default=None,
    help="Also print the Renyi entropy of this order.",
)
@loading_options
@full_precision_option
@output_option
@handle_errors
def command(
    path: Path,
    alpha: Optional[float],
    strict: bool,
    tolerance: Optional[float],
    full_precision: bool,
    output: Optional[Path],
) -> None:
    """Print per-measurement entropies in bits."""
    experiment = load_experiment(path, strict=strict, tolerance=tolerance)
    rows = entropy_rows(experiment, alpha)
    emit(render_rows(rows, EntropyRow, full_precision, drop_empty=("renyi",)), output)
