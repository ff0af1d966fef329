"""
Workers package for fracpow.

Workers run independent sweep cells in parallel and guard memory use.
"""

from .cell_worker import run_jobs
from .resources import check_capacity, estimate_basis_bytes

__all__ = [
    'run_jobs',
    'check_capacity',
    'estimate_basis_bytes',
]
