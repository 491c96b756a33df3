"""
Exception hierarchy for ij_tamari.

Verifiers report failed mathematical checks through ``reports.Report``;
the exceptions below are reserved for bad input, broken preconditions,
exhausted resource limits and internal bugs.
"""

from typing import Any, Dict, Optional


class IJTamariError(Exception):
    """Base class for every error raised by the package."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.details = details or {}

    def __reduce__(self):
        return (self.__class__, (self.args[0], self.details))


class GraphError(IJTamariError):
    """Malformed graph, vertex query or path query."""


class ProvenanceError(GraphError):
    """Edge provenance that does not chain from tail to head."""


class ReductionError(IJTamariError):
    """Reduction requested on an absent or alternating pair, or a bad reduction order."""


class InvalidPair(IJTamariError):
    """The pair (I, Jbar) violates a validity condition."""

    def __init__(self, condition: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(f"invalid pair: {condition}", details)
        self.condition = condition

    def __reduce__(self):
        return (self.__class__, (self.condition, self.details))


class EmptyPair(InvalidPair):
    """Nothing survives normalization of the pair."""


class SpaceMismatchError(IJTamariError):
    """A linear map received a vertex living in the wrong ambient space."""


class ResourceLimitError(IJTamariError):
    """A configured limit (reduction steps, flow counts, pair size) was exceeded."""


class InvariantViolation(IJTamariError):
    """An internal postcondition failed. Always a bug."""


class ConfigError(IJTamariError):
    """Unparseable or out-of-range configuration value."""
