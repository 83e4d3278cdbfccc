"""Uniform irreducibility bounds and candidate reducible primes for semistable elliptic curves."""

__version__ = "0.1.0"

from .errors import CapExceededError, NonPrincipalError, PrecisionError, ValidationError  # noqa: E402
from .kernels import BACKEND  # noqa: E402

__all__ = ["BACKEND", "CapExceededError", "NonPrincipalError", "PrecisionError", "ValidationError", "__version__"]
