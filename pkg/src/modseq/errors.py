"""Exception types shared across the package."""


class UsageError(ValueError):
    """An argument violates a documented precondition."""


class ResourceLimitError(RuntimeError):
    """A materialization would exceed the configured cap.

    Callers hitting this should switch to the analytic period-prediction
    routines instead of brute-force materialization.
    """
