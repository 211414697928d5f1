"""Exception types shared across the package."""


class StochOrderError(Exception):
    """Base class for all package-specific errors."""


class InvalidDistributionError(StochOrderError, ValueError):
    """A distribution or measure violates its construction invariants."""


class DomainError(StochOrderError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class PreconditionError(StochOrderError):
    """A verifiable mathematical precondition failed.

    ``witness`` holds concrete data (points, intervals, masses) for which the
    precondition inequality can be re-evaluated and seen to fail.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness
