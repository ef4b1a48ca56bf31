"""Options and error handling shared by the subcommands."""

import functools
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

import click
import structlog
from pydantic import ValidationError

from jsentropy.core.exceptions import EntropyAnalysisError, describe_validation_error
from jsentropy.schemas.experiment import RecordError
from jsentropy.schemas.shrinkage import ShrinkageConfig, Sigma2Mode

logger = structlog.stdlib.get_logger(__name__)


def handle_errors(func: Callable[..., Any]) -> Callable[..., Any]:
    """Turn library errors into click errors (exit code 1)."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except EntropyAnalysisError as exc:
            logger.debug("command failed", error=exc.message, details=exc.details)
            raise click.ClickException(exc.message) from exc
        except ValidationError as exc:
            raise click.ClickException(describe_validation_error(exc)) from exc

    return wrapper


full_precision_option = click.option(
    "--full-precision",
    is_flag=True,
    help="Print floats with 17 significant digits instead of 6.",
)

output_option = click.option(
    "-o",
    "--output",
    type=click.Path(dir_okay=False, writable=True, path_type=Path),
    default=None,
    help="Write the table to a file instead of stdout.",
)

input_argument = click.argument(
    "path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
)


def loading_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """--strict and --tolerance for experiment ingestion."""
    func = click.option(
        "--tolerance",
        type=click.FloatRange(min=0.0, min_open=True),
        default=None,
        help="Lenient sum-to-one tolerance for empirical probabilities.",
    )(func)
    func = click.option(
        "--strict",
        is_flag=True,
        help="Reject distributions that do not sum to 1 instead of renormalising.",
    )(func)
    return func


def shrinkage_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """--sigma2, --sigma-mode and --no-positive-part."""
    func = click.option(
        "--no-positive-part",
        is_flag=True,
        help="Keep negative shrinkage factors instead of clamping at 0.",
    )(func)
    func = click.option(
        "--sigma-mode",
        type=click.Choice([Sigma2Mode.FROM_REFERENCE.value, Sigma2Mode.SAMPLE_VARIANCE.value]),
        default=None,
        help="Estimate sigma^2 from the theory reference or the sample variance.",
    )(func)
    func = click.option(
        "--sigma2",
        type=click.FloatRange(min=0.0),
        default=None,
        help="Noise variance to use as given.",
    )(func)
    return func


def build_shrinkage_config(
    sigma2: Optional[float],
    sigma_mode: Optional[str],
    no_positive_part: bool,
) -> ShrinkageConfig:
    if sigma2 is not None and sigma_mode is not None:
        raise click.UsageError("--sigma2 and --sigma-mode are mutually exclusive")
    if sigma2 is not None:
        return ShrinkageConfig.provided(sigma2, positive_part=not no_positive_part)
    mode = Sigma2Mode(sigma_mode) if sigma_mode else Sigma2Mode.FROM_REFERENCE
    return ShrinkageConfig(sigma2_mode=mode, positive_part=not no_positive_part)


def emit(text: str, output: Optional[Path]) -> None:
    """Write ``text`` to ``output`` or stdout."""
    if output is None:
        click.echo(text, nl=False)
        return
    output.write_text(text, encoding="utf-8")
    logger.info("wrote output", path=str(output))


def report_record_errors(errors: Sequence[RecordError], produced: int) -> None:
    """Print per-record failures on stderr; fail when nothing was produced."""
    for error in errors:
        click.echo(f"record {error.record_index} ({error.state_label}): {error.message}", err=True)
    if errors and produced == 0:
        raise click.ClickException("no record could be processed")


def parse_list(kind: Callable[[str], Any]) -> Callable[[click.Context, click.Parameter, Optional[str]], Any]:
    """Callback parsing a comma-separated option into a list."""

    def callback(ctx: click.Context, param: click.Parameter, value: Optional[str]) -> Any:
        if value is None:
            return None
        try:
            return [kind(part.strip()) for part in value.split(",") if part.strip()]
        except ValueError as exc:
            raise click.BadParameter(f"expected a comma-separated list: {exc}") from exc

    return callback
