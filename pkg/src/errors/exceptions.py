"""
Exception hierarchy for the fractional-power solver.

Every error raised by the library derives from FracPowError so the CLI can
map it onto a stable exit code.
"""

# Exit codes (stable contract of the command-line frontend)
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3


class FracPowError(Exception):
    """Base class for all fracpow errors."""
    pass


class DimensionError(FracPowError):
    """Grid functions, operators or bases live on different grids."""
    pass


class DomainError(FracPowError):
    """A parameter lies outside its admissible range."""
    pass


class CapacityError(FracPowError):
    """A dense path or a grid exceeds the configured size or available memory."""
    pass


class NumericError(FracPowError):
    """An eigensolve or other numerical kernel failed."""
    pass


class NormalizationError(FracPowError):
    """Relative errors or normalized fields cannot be formed (zero reference)."""
    pass


class ShapeMismatchError(FracPowError):
    """Produced and reference tables are not congruent."""
    pass


class UsageError(FracPowError):
    """Invalid command-line flags or run-file values."""
    pass


class ReferenceDataError(FracPowError):
    """A shipped reference table is missing or fails its checksum."""
    pass


def describe_error(error: Exception) -> str:
    """
    Turn an exception into a user-facing message.

    Args:
        error: The exception raised by a command

    Returns:
        Message suitable for printing to stderr
    """
    detail = str(error)

    if isinstance(error, UsageError):
        return f"Invalid arguments: {detail}"
    elif isinstance(error, DomainError):
        return f"Parameter out of range: {detail}"
    elif isinstance(error, CapacityError):
        return (
            f"Problem too large: {detail}\n"
            "Reduce N, raise solver.dense_cap in the config file, or use the analytic basis."
        )
    elif isinstance(error, DimensionError):
        return f"Grid mismatch: {detail}"
    elif isinstance(error, NumericError):
        return f"Numerical failure: {detail}"
    elif isinstance(error, NormalizationError):
        return f"Cannot normalize: {detail}"
    elif isinstance(error, ShapeMismatchError):
        return f"Table shape mismatch: {detail}"
    elif isinstance(error, ReferenceDataError):
        return f"Reference data problem: {detail}"
    else:
        return f"Unexpected error: {detail}"


def exit_code_for(error: Exception) -> int:
    """Map an exception onto the CLI exit-code contract."""
    if isinstance(error, (UsageError, DomainError)):
        return EXIT_USAGE
    if isinstance(error, CapacityError):
        return EXIT_CAPACITY
    return EXIT_CHECK_FAILED
