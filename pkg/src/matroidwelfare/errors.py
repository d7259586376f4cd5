"""Shared exception types."""


class InvalidInputError(ValueError):
    """Malformed or out-of-contract input (bad indices, negative weights, ...)."""


class CapabilityError(RuntimeError):
    """The requested computation exceeds a documented brute-force limit."""


class DegenerateInstanceError(ValueError):
    """Weighted instance with no positive singleton value anywhere."""


class EstimationFailureError(RuntimeError):
    """Monte-Carlo selection found no candidate above its threshold.

    Carries the best candidate seen so the caller can distinguish
    'not enough samples' from 'precondition violated'.
    """

    def __init__(self, message: str, best_element: int | None = None,
                 best_estimate: float | None = None):
        super().__init__(message)
        self.best_element = best_element
        self.best_estimate = best_estimate


class LoopError(ValueError):
    """An element that is dependent on its own cannot be placed in any part."""
