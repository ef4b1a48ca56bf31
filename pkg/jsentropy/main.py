"""Console entry point for the jsentropy CLI."""

from typing import Optional, Sequence

from jsentropy.cli.app import cli


def main(argv: Optional[Sequence[str]] = None) -> None:
    cli.main(args=list(argv) if argv is not None else None, prog_name="jsentropy")


if __name__ == "__main__":
    main()
