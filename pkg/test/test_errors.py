"""
Tests for the exception hierarchy.
"""
import pickle

import pytest

from ij_tamari.errors import EmptyPair, GraphError, IJTamariError, InvalidPair, ProvenanceError, ResourceLimitError


class TestErrors:
    """Messages, details and transport between processes."""

    def test_hierarchy(self):
        """Everything derives from the package base class."""
        assert issubclass(ProvenanceError, GraphError)
        assert issubclass(EmptyPair, InvalidPair)
        assert issubclass(ResourceLimitError, IJTamariError)

    def test_invalid_pair_message(self):
        """The condition is kept next to the prefixed message."""
        error = InvalidPair("I is empty", {"I": []})
        assert str(error) == "invalid pair: I is empty"
        assert error.condition == "I is empty"
        assert error.details == {"I": []}

    def test_pickle_round_trip(self):
        """Errors cross a process pool with their message and details intact."""
        for error in (InvalidPair("I is empty", {"I": []}), ResourceLimitError("cap", {"max_reductions": 1})):
            restored = pickle.loads(pickle.dumps(error))
            assert type(restored) is type(error)
            assert str(restored) == str(error)
            assert restored.details == error.details


if __name__ == "__main__":
    pytest.main([__file__])
