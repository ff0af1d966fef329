"""
Exception types, exit-code mapping and shared parameter checks for fracpow.
"""

from .exceptions import (
    FracPowError, DimensionError, DomainError, CapacityError, NumericError,
    NormalizationError, ShapeMismatchError, UsageError, ReferenceDataError,
    describe_error, exit_code_for,
    EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_CAPACITY
)
from .validation import check_alpha, check_shift, check_positive_int, check_positive

__all__ = [
    'FracPowError', 'DimensionError', 'DomainError', 'CapacityError', 'NumericError',
    'NormalizationError', 'ShapeMismatchError', 'UsageError', 'ReferenceDataError',
    'describe_error', 'exit_code_for',
    'EXIT_OK', 'EXIT_CHECK_FAILED', 'EXIT_USAGE', 'EXIT_CAPACITY',
    'check_alpha', 'check_shift', 'check_positive_int', 'check_positive',
]
