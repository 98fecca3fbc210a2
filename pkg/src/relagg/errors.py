"""Shared exception types."""


class RelaggError(Exception):
    """Base class for all errors raised by this package."""


class TableError(RelaggError):
    """Malformed relational input (bad CSV, ragged row, non-numeric cell)."""


class CyclicJoinError(RelaggError):
    """The join hypergraph admits no join tree."""


class QueryRejected(RelaggError):
    """A query fails a precondition of the evaluation algorithms.

    Carries a human-readable reason; callers map this to exit code 2.
    """

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class CapExceeded(RelaggError):
    """A size cap was hit (join materialization or sketch growth)."""
