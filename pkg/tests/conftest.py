import os
import random
from pathlib import Path

import pytest

from stepfit.core.settings import get_settings, reset_settings
from stepfit.models.domain import Instance
from stepfit.utils.generator import generate_triples


@pytest.fixture(autouse=True)
def test_env():
    """Set test environment and load test config."""
    os.environ["ENVIRONMENT"] = "testing"

    # Ensure test env file exists
    test_env_file = Path(__file__).parent.parent / ".env.testing"
    if not test_env_file.exists():
        raise FileNotFoundError(f"Test environment file not found: {test_env_file}")

    yield
    os.environ.pop("ENVIRONMENT", None)


@pytest.fixture
def test_settings():
    """Override solver settings for testing and restore them afterwards."""
    settings = get_settings()
    original = settings.solver.model_copy()
    yield settings
    settings.solver = original


@pytest.fixture
def fresh_settings(monkeypatch):
    """Settings re-read from the environment; use ``monkeypatch.setenv`` first."""
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def three_points():
    """The up-down-up instance with optimum 1 for k=2."""
    return Instance.from_triples([(0, 0, 1), (1, 2, 1), (2, 0, 1)], 2)


@pytest.fixture
def weighted_pair():
    return Instance.from_triples([(0, 0, 1), (1, 2, 3)], 1)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def make_instance():
    """Factory for seeded integer instances."""

    def _make(n: int, k: int, seed: int, coord_range=(-50, 50)) -> Instance:
        return Instance.from_triples(
            generate_triples(n, seed, coord_range=coord_range), k
        )

    return _make


@pytest.fixture
def write_file(tmp_path):
    """Write ``text`` to a file under ``tmp_path`` and return its path."""

    def _write(text: str, name: str = "instance.txt") -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write
