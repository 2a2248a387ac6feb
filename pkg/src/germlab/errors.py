class NotApplicable(Exception):
    """The input is well formed but the requested invariant is not defined for it
    (non-isolated singularity, not a complete intersection, infinite codimension...)."""


class GenericityFailure(NotApplicable):
    """No sampled linear change passed the genericity checks."""

    def __init__(self, message: str, attempts: list | None = None):
        super().__init__(message)
        self.attempts = attempts or []


class InternalInconsistency(RuntimeError):
    """Two routes that must agree did not; this is a bug, not a property of the input."""
