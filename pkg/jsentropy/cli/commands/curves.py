"""``curves``: theory curves for plotting."""

from pathlib import Path
from typing import Optional

import click

from jsentropy.cli.common import emit, full_precision_option, handle_errors, output_option
from jsentropy.schemas.experiment import CurvePoint
from jsentropy.services.entropy_service import TheoryState
from jsentropy.services.experiment_service import default_grid, emit_curves
from jsentropy.services.table_service import render_rows


@click.command("curves")
@click.option("--state", type=click.Choice([s.value for s in TheoryState]), required=True)
@click.option("--a", "a_values", type=float, multiple=True, help="Grid value in (0, 1); repeat for several.")
@click.option(
    "--points",
    type=click.IntRange(min=1),
    default=99,
    show_default=True,
    help="Evenly spaced grid size when no --a is given.",
)
@full_precision_option
@output_option
@handle_errors
def command(
    state: str,
    a_values: tuple[float, ...],
    points: int,
    full_precision: bool,
    output: Optional[Path],
) -> None:
    """Print (a, sum_theory) rows."""
    grid = list(a_values) if a_values else default_grid(points)
    emit(render_rows(emit_curves(TheoryState(state), grid), CurvePoint, full_precision), output)
