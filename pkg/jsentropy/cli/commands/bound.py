"""``bound``: check records against the multi-observable entropic bound."""

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
from jsentropy.schemas.quantum import BoundReport
from jsentropy.services.experiment_service import bound_reports, load_density_matrix, load_experiment
from jsentropy.services.presets import BasisPresetFactory
from jsentropy.services.table_service import render_rows


@click.command("bound")
@input_argument
@click.option(
    "--b",
    "b",
    type=click.FloatRange(min=0.0, max=1.0, min_open=True),
    default=None,
    help="Overlap constant b.",
)
@click.option(
    "--rho",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="YAML density matrix (real/imag blocks). Defaults to a pure state.",
)
@click.option(
    "--preset",
    type=click.Choice(BasisPresetFactory.available()),
    default=None,
    help="Basis preset used to compute b when --b is not given.",
)
@click.option(
    "--sigma2",
    type=click.FloatRange(min=0.0),
    default=0.0,
    show_default=True,
    help="Noise variance for the shrunk sum.",
)
@loading_options
@full_precision_option
@output_option
@handle_errors
def command(
    path: Path,
    b: Optional[float],
    rho: Optional[Path],
    preset: Optional[str],
    sigma2: float,
    strict: bool,
    tolerance: Optional[float],
    full_precision: bool,
    output: Optional[Path],
) -> None:
    """Print bound value, raw and shrunk sums, and slack per record."""
    if b is None and preset is None:
        raise click.UsageError("give --b or --preset")
    experiment = load_experiment(path, strict=strict, tolerance=tolerance)
    density = load_density_matrix(rho) if rho is not None else None
    reports = bound_reports(experiment, b=b, rho=density, preset=preset, sigma2=sigma2)
    emit(render_rows(reports, BoundReport, full_precision), output)
