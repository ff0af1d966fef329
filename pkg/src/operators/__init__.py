"""
Finite-difference elliptic operator.
"""

from .elliptic_operator import (
    CoefficientField, EllipticOperator, truncation_error, DEFAULT_DENSE_CAP
)

__all__ = ['CoefficientField', 'EllipticOperator', 'truncation_error', 'DEFAULT_DENSE_CAP']
