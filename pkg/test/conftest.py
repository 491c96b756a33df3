"""
Test configuration and shared pairs for ij_tamari tests.
"""
import os
import sys

import pytest

# Add src directory to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from ij_tamari.graphs import ProvGraph  # noqa: E402
from ij_tamari.ij_construction import ValidPair, validate_pair  # noqa: E402


@pytest.fixture
def running_pair() -> ValidPair:
    """I = {1,2,3,5,9}, Jbar = {2,7,8,9}: the running pair."""
    return validate_pair([1, 2, 3, 5, 9], [2, 7, 8, 9])


@pytest.fixture
def small_pair() -> ValidPair:
    """I = {1,2}, Jbar = {2,3,4}; its G is the three-edge tree 12, 23, 24."""
    return validate_pair([1, 2], [2, 3, 4])


@pytest.fixture
def tiny_pair() -> ValidPair:
    """I = {1}, Jbar = {1}: a single cone point."""
    return validate_pair([1], [1])


@pytest.fixture
def small_graph() -> ProvGraph:
    """The graph ([4], {(1,2), (2,3), (2,4)})."""
    return ProvGraph.from_pairs([(1, 2), (2, 3), (2, 4)])


@pytest.fixture
def running_G() -> ProvGraph:
    """G(I,Jbar) of the running pair."""
    return ProvGraph.from_pairs([(1, 2), (2, 5), (3, 5), (5, 8), (5, 9)])
