"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input violates a structural or numerical precondition."""


class PositivityError(ValidationError):
    """A matrix that must be positive semi-definite is not."""


class ConfigError(ValidationError):
    """A run configuration is malformed or internally inconsistent."""


class IntegrationError(RuntimeError):
    """Time integration failed (divergence or loss of positivity)."""


class NotAlignedError(IntegrationError):
    """A trajectory never came within tolerance of its target state."""

    def __init__(self, message: str, final_distance: float):
        super().__init__(message)
        self.final_distance = final_distance
