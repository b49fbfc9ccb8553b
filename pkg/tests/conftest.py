"""Shared fixtures for the navigation test suite"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.robot import ControllerGains, RobotCapabilities  # noqa: E402
from src.terrain import UnitKind, build_custom_grid  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def caps():
    """Default capabilities (WP-Random ceilings)"""
    return RobotCapabilities()


@pytest.fixture
def gains():
    return ControllerGains()


@pytest.fixture
def flat_grid():
    """4 x 4 flat units of 2 m"""
    return build_custom_grid([[UnitKind.FLAT] * 4 for _ in range(4)], unit_size=2.0)


@pytest.fixture
def fixtures_dir():
    return FIXTURES
