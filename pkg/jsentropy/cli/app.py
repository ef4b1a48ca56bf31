"""Command group.

Aggregates the subcommands the way an API router aggregates endpoints.
"""

from typing import Optional

import click

from jsentropy import __version__
from jsentropy.cli.commands import bound, curves, entropy, report, risk, shrink, simulate
from jsentropy.core.logging import setup_logging


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--log-level", default=None, help="Override JSENTROPY_LOG_LEVEL (e.g. INFO, DEBUG).")
@click.option("--log-format", type=click.Choice(["json", "text"]), default=None, help="Log renderer.")
@click.version_option(__version__, prog_name="jsentropy")
def cli(log_level: Optional[str], log_format: Optional[str]) -> None:
    """Entropy sums, James-Stein shrinkage and entropic uncertainty bounds."""
    setup_logging(log_level, log_format)


cli.add_command(entropy.command)
cli.add_command(shrink.command)
cli.add_command(bound.command)
cli.add_command(simulate.command)
cli.add_command(risk.risk_command)
cli.add_command(risk.sweep_command)
cli.add_command(curves.command)
cli.add_command(report.command)
