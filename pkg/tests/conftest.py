"""Shared test fixtures for jsentropy tests."""

from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from jsentropy.core.logging import setup_logging
from jsentropy.schemas.distribution import EntropyVector

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def quiet_logging():
    """Reset logging for every test; CLI runs rebind the stream."""
    setup_logging("WARNING", "text")
    yield


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for randomised property tests."""
    return np.random.default_rng(20240611)


@pytest.fixture
def worked_table_path() -> Path:
    return FIXTURES / "worked_table.yaml"


@pytest.fixture
def three_measurements_path() -> Path:
    return FIXTURES / "three_measurements.yaml"


@pytest.fixture
def flat_experiment_path() -> Path:
    return FIXTURES / "flat_experiment.csv"


@pytest.fixture
def mixed_qubit_path() -> Path:
    return FIXTURES / "maximally_mixed_qubit.yaml"


@pytest.fixture
def unit_vector() -> EntropyVector:
    """(1, 1, 1)."""
    return EntropyVector.of([1.0, 1.0, 1.0], state_label="unit")


@pytest.fixture
def cli_runner() -> CliRunner:
    """Create Click CLI test runner."""
    return CliRunner()


@pytest.fixture
def write_yaml(tmp_path: Path):
    """Write YAML text to a temporary experiment file."""

    def _write(text: str, name: str = "experiment.yaml") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write
