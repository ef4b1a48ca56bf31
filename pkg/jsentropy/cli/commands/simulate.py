"""``simulate``: synthetic spin-1 experiment records."""

from pathlib import Path
from typing import Optional

import click

from jsentropy.cli.common import emit, handle_errors
from jsentropy.schemas.quantum import NoiseModel
from jsentropy.services.entropy_service import TheoryState
from jsentropy.services.experiment_service import dump_experiment, simulate_experiment, write_experiment


@click.command("simulate")
@click.option("--state", type=click.Choice([s.value for s in TheoryState]), required=True)
@click.option(
    "--a",
    "a_values",
    type=click.FloatRange(0.0, 1.0, min_open=True, max_open=True),
    multiple=True,
    required=True,
    help="Family parameter; repeat for several records.",
)
@click.option(
    "--noise",
    type=click.FloatRange(0.0, 1.0),
    default=0.0,
    show_default=True,
    help="Depolarizing probability.",
)
@click.option(
    "--shots",
    type=click.IntRange(min=1),
    default=None,
    help="Sample this many shots per measurement.",
)
@click.option("--seed", type=click.IntRange(min=0), required=True)
@click.option(
    "-o",
    "--output",
    type=click.Path(dir_okay=False, writable=True, path_type=Path),
    default=None,
    help="Experiment file to write (.yaml or .csv); YAML to stdout otherwise.",
)
@handle_errors
def command(
    state: str,
    a_values: tuple[float, ...],
    noise: float,
    shots: Optional[int],
    seed: int,
    output: Optional[Path],
) -> None:
    """Generate an experiment file from the preset measurement family."""
    experiment = simulate_experiment(
        TheoryState(state),
        list(a_values),
        NoiseModel(depolarizing_p=noise),
        shots,
        seed,
    )
    if output is None:
        emit(dump_experiment(experiment), None)
    else:
        write_experiment(experiment, output)
