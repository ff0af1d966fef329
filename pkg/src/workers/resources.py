"""
Memory guards for dense work arrays.
"""

import logging

import psutil

from errors import CapacityError
from grid import Grid2D

logger = logging.getLogger(__name__)

BYTES_PER_FLOAT = 8

# Fraction of available memory a single allocation may claim
MEMORY_HEADROOM = 0.8


def estimate_basis_bytes(grid: Grid2D, mode: str) -> int:
    """
    Rough peak memory of building and using a spectral basis.

    analytic-sine keeps two per-axis sine matrices plus a few K-vectors;
    dense-eigen holds the K x K matrix and its eigenvectors.
    """
    n1, n2 = grid.shape
    if mode.startswith("dense"):
        return 3 * grid.K * grid.K * BYTES_PER_FLOAT
    return (n1 * n1 + n2 * n2 + 8 * grid.K) * BYTES_PER_FLOAT


def check_capacity(bytes_needed: int, what: str) -> None:
    """
    Raises:
        CapacityError: If bytes_needed exceeds the usable part of available memory
    """
    available = psutil.virtual_memory().available
    if bytes_needed > MEMORY_HEADROOM * available:
        raise CapacityError(
            f"{what} needs about {bytes_needed / 2**20:.0f} MiB, "
            f"only {available / 2**20:.0f} MiB available"
        )
    logger.debug(f"{what}: {bytes_needed / 2**20:.1f} MiB of {available / 2**20:.0f} MiB available")
