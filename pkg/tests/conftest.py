import sys
from pathlib import Path

import pytest

from gazekit.core import DEFAULT_GEOMETRY, StreamConfig

sys.path.insert(0, str(Path(__file__).parent))  # for oracles.py

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def geometry():
    return DEFAULT_GEOMETRY


@pytest.fixture
def config60():
    return StreamConfig(rate_hz=60.0)


@pytest.fixture
def config240():
    return StreamConfig(rate_hz=240.0)


@pytest.fixture
def fixtures_dir():
    return FIXTURES
