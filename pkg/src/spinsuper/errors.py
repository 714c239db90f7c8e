"""Exception types raised across the package."""


class SpinSuperError(Exception):
    """Base class for all package errors."""


class SizeMismatch(SpinSuperError, ValueError):
    pass


class SizeOutOfRange(SpinSuperError, ValueError):
    pass


class SpinIndexError(SpinSuperError, IndexError):
    pass


class DegenerateState(SpinSuperError, ValueError):
    pass


class NoCluster(SpinSuperError, ValueError):
    pass


class PartitionError(SpinSuperError, ValueError):
    pass


class InconsistentInputs(SpinSuperError, ValueError):
    """Raised for (m, q) pairs that no normalized state can produce."""


class ValidationFailure(SpinSuperError):
    """An oracle cross-check did not hold; ``failures`` lists the offenders."""

    def __init__(self, message, failures=None):
        super().__init__(message)
        self.failures = list(failures or [])
