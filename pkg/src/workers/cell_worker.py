"""
Cell worker for fracpow.

Runs independent sweep cells on a thread pool; numpy and scipy release the
GIL inside the heavy kernels.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar

from errors import check_positive_int

logger = logging.getLogger(__name__)

T = TypeVar('T')


def run_jobs(jobs: Sequence[Callable[[], T]], threads: int = 1) -> List[T]:
    """
    Run zero-argument jobs and return their results in submission order.

    Args:
        jobs: Callables to execute
        threads: Worker cap; 1 runs inline on the calling thread

    Returns:
        Results, results[i] belonging to jobs[i]

    Raises:
        The first exception raised by a job (in submission order)
    """
    threads = check_positive_int(threads, "threads")
    if threads == 1 or len(jobs) <= 1:
        return [job() for job in jobs]

    workers = min(threads, len(jobs))
    logger.debug(f"Running {len(jobs)} jobs on {workers} threads")
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="fracpow-cell") as pool:
        futures = [pool.submit(job) for job in jobs]
        return [future.result() for future in futures]
