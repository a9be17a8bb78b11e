"""
Shared test configuration and fixtures for the Mustafin degeneration engine.
"""

import pytest

from app.algebra.rings import PolyRing
from app.models.building import Configuration
from app.models.flags import FlagType
from app.services.classification_service import ComponentClassifier


@pytest.fixture
def xyz() -> PolyRing:
    """Q[x, y, z] with degrevlex."""
    return PolyRing.from_names(["x", "y", "z"])


@pytest.fixture
def xyzt() -> PolyRing:
    """Q[x, y, z, t]; t is tagged as the parameter."""
    return PolyRing.from_names(["x", "y", "z", "t"])


@pytest.fixture
def full_flag() -> FlagType:
    """Complete flags in dimension 3, type (1<2)."""
    return FlagType(3, (1, 2))


@pytest.fixture
def three_vertices() -> Configuration:
    """Three apartment vertices with one secondary component."""
    return Configuration.apartment([(0, 0, 0), (1, 0, 0), (0, 0, 1)])


@pytest.fixture
def two_vertices() -> Configuration:
    """The two outer vertices of ``three_vertices``."""
    return Configuration.apartment([(1, 0, 0), (0, 0, 1)])


@pytest.fixture
def line_pair() -> Configuration:
    """Two adjacent vertices in dimension 2."""
    return Configuration.apartment([(0, 0), (1, 0)])


@pytest.fixture(scope="session")
def classifier() -> ComponentClassifier:
    """Shared classifier so degenerations and decompositions are cached across tests."""
    return ComponentClassifier(seed=0, radius=0)


def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line(
        "markers", "algebra: polynomial and ideal kernel"
    )
    config.addinivalue_line(
        "markers", "building: lattice classes, distances and hulls"
    )
    config.addinivalue_line(
        "markers", "degeneration: degeneration ideals and special fibers"
    )
    config.addinivalue_line(
        "markers", "components: decomposition and classification"
    )
    config.addinivalue_line(
        "markers", "cli: command-line driver and configuration files"
    )
    config.addinivalue_line(
        "markers", "api: HTTP endpoints"
    )
    config.addinivalue_line(
        "markers", "integration: end-to-end runs of the golden cases"
    )
    config.addinivalue_line(
        "markers", "slow: mark test as slow running"
    )
