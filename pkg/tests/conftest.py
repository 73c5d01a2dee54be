"""Shared fixtures for the test suite"""

import sys
import os

import pytest

# Add the repository root to Python path to allow imports
current_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.dirname(current_dir))

from core.graph import build_graph, generator


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: runs over the full default corpus")


@pytest.fixture
def k2():
    return generator('complete', 2)


@pytest.fixture
def star4():
    return generator('star', 4)


@pytest.fixture
def k3():
    return generator('complete', 3)


@pytest.fixture
def path4():
    return generator('path', 4)


@pytest.fixture
def cycle4():
    return generator('cycle', 4)


@pytest.fixture
def paw():
    """Triangle 0-1-2 with a pendant vertex 3 on vertex 0"""
    return build_graph(4, [(0, 1), (0, 2), (1, 2), (0, 3)])
