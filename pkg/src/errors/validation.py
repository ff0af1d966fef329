"""
Parameter checks shared by the numerical modules.
"""

import math
from numbers import Integral, Real

from .exceptions import DomainError


def check_alpha(alpha: float) -> float:
    """Fractional exponent must lie in the open interval (0, 1)."""
    if not isinstance(alpha, Real) or not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie in the open interval (0, 1), got {alpha!r}")
    return float(alpha)


def check_shift(p: int) -> int:
    """Integer shift p >= 0 of the exponent."""
    if isinstance(p, bool) or not isinstance(p, Integral) or p < 0:
        raise DomainError(f"p must be a nonnegative integer, got {p!r}")
    return int(p)


def check_positive_int(value: int, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, Integral) or value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def check_positive(value: float, name: str) -> float:
    if not isinstance(value, Real) or not math.isfinite(value) or value <= 0:
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")
    return float(value)
