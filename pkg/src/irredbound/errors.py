"""Exception hierarchy; the CLI maps these onto exit codes 2 and 3."""

from .magnitude import PrecisionError


class ValidationError(ValueError):
    """Bad input or a violated precondition (exit code 2)."""


class CapExceededError(RuntimeError):
    """A configured search/enumeration cap was hit (exit code 3)."""


class NonPrincipalError(ValidationError):
    def __init__(self, message, class_order=None):
        super().__init__(message)
        self.class_order = class_order


__all__ = ["ValidationError", "CapExceededError", "NonPrincipalError", "PrecisionError"]
