"""Order-preserving process pool with a progress bar"""

import logging
import multiprocessing
import multiprocessing.pool
import os
import sys
from typing import Any, Callable, Iterable, List, Optional

from tqdm.auto import tqdm

BLAS_THREAD_VARIABLES = ("OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS", "OMP_NUM_THREADS")


def _single_threaded_pool(cores: int) -> multiprocessing.pool.Pool:
    """Start spawned workers whose BLAS loads with one thread

    BLAS reads the thread variables once, when it is loaded, so they are exported
    before the workers start and restored in the parent right after.
    """
    saved = {name: os.environ.get(name) for name in BLAS_THREAD_VARIABLES}
    os.environ.update({name: "1" for name in BLAS_THREAD_VARIABLES})
    try:
        return multiprocessing.get_context("spawn").Pool(cores)
    finally:
        for name, value in saved.items():
            if value is None:
                os.environ.pop(name, None)
            else:
                os.environ[name] = value


def run_parallel(
    task: Callable[[Any], Any],
    items: Iterable[Any],
    cores: int = 1,
    description: Optional[str] = None,
) -> List[Any]:
    """Apply task to every item, results in item order

    Args:
        task (Callable[[Any], Any]): Picklable function of one item.
        items (Iterable[Any]): Independent work items, typically one per seed.
        cores (int, optional): Number of worker processes. Defaults to 1.
        description (Optional[str], optional): Progress bar label. Defaults to None.

    Returns:
        List[Any]: task(item) for every item.
    """
    items = list(items)
    # progress bar on standard error, only at INFO level
    quiet = not logging.getLogger().isEnabledFor(logging.INFO)
    if cores <= 1:
        return [
            task(item)
            for item in tqdm(items, desc=description, disable=quiet, file=sys.stderr)
        ]
    worker_pool = _single_threaded_pool(cores)
    results = list(
        tqdm(
            worker_pool.imap(task, items),
            total=len(items),
            desc=description,
            disable=quiet,
            file=sys.stderr,
        )
    )
    worker_pool.close()
    worker_pool.join()
    return results
