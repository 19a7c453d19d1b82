# Semigame - Test Configuration and Fixtures
# Session-scoped solved tables and environment flags for expensive runs

import pytest
import logging
import os
from pathlib import Path

from semigame.graph import circulant, cycle3, directed_path
from semigame.solver import solve_box
from tests.fixtures.cache_manager import get_temp_cache_manager

logger = logging.getLogger(__name__)

# Test configuration flags
SKIP_INTEGRATION_TESTS = os.getenv("SKIP_INTEGRATION_TESTS", "true").lower() == "true"
SKIP_SLOW_TESTS = os.getenv("SKIP_SLOW_TESTS", "false").lower() == "true"


def pytest_configure(config):
    """Configure pytest with custom markers"""
    config.addinivalue_line(
        "markers", "slow: mark test as slow running"
    )
    config.addinivalue_line(
        "markers", "integration: mark test as acceptance run"
    )
    config.addinivalue_line(
        "markers", "unit: mark test as unit test"
    )


def pytest_collection_modifyitems(config, items):
    """Modify test collection based on environment flags"""
    skip_integration = pytest.mark.skip(reason="Integration tests skipped (SKIP_INTEGRATION_TESTS=true)")
    skip_slow = pytest.mark.skip(reason="Slow tests skipped (SKIP_SLOW_TESTS=true)")

    for item in items:
        # Skip integration tests by default
        if SKIP_INTEGRATION_TESTS and "integration" in item.keywords:
            item.add_marker(skip_integration)

        # Skip slow tests if flag is set
        if SKIP_SLOW_TESTS and "slow" in item.keywords:
            item.add_marker(skip_slow)


# Session-scoped digraphs and solved tables
@pytest.fixture(scope="session")
def c3():
    """The 3-cycle 0 -> 1 -> 2 -> 0 (Paper, Rock, Scissors)"""
    return cycle3()


@pytest.fixture(scope="session")
def path3():
    """Directed path 0 -> 1 -> 2"""
    return directed_path(3)


@pytest.fixture(scope="session")
def circulant5():
    """Eulerian tournament on 5 vertices"""
    return circulant(5, [1, 2])


@pytest.fixture(scope="session")
def c3_table(c3):
    """Exact values of every state up to (4, 4, 4) on C3"""
    logger.info("🔄 Solving C3 box (4, 4, 4) for the session")
    return solve_box(c3, (4, 4, 4))


@pytest.fixture(scope="session")
def path3_table(path3):
    """Exact values of every state up to (3, 4, 4) on the directed path"""
    logger.info("🔄 Solving path box (3, 4, 4) for the session")
    return solve_box(path3, (3, 4, 4))


@pytest.fixture(scope="session")
def circulant5_table(circulant5):
    """Exact values of every state up to (1, 1, 1, 1, 1) on circulant(5, {1, 2})"""
    return solve_box(circulant5, (1, 1, 1, 1, 1))


# Function-scoped fixtures for test isolation
@pytest.fixture
def temp_cache_dir():
    """Temporary cache directory removed after the test"""
    manager = get_temp_cache_manager()
    with manager.directory() as directory:
        yield directory


@pytest.fixture
def temp_directory(tmp_path):
    """Temporary directory for test files"""
    return Path(tmp_path)

