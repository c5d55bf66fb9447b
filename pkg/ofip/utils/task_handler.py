"""
Task handler for running campaign trials on a worker pool.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

T = TypeVar('T')
R = TypeVar('R')


class TaskHandler:
    """Run independent tasks serially or on a thread pool, keeping input order."""

    def __init__(self, workers: int = 1):
        if workers < 1:
            raise ValueError(f"workers must be at least 1, got {workers}")
        self.logger = logging.getLogger(__name__)
        self.workers = workers
        self._executor: Optional[ThreadPoolExecutor] = None

    def start(self):
        if self.workers > 1 and self._executor is None:
            self._executor = ThreadPoolExecutor(max_workers=self.workers, thread_name_prefix='ofip-trial')
            self.logger.debug(f"Started worker pool with {self.workers} threads")

    def map_ordered(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """Apply fn to every item; results come back in input order whatever the schedule."""
        items = list(items)
        if self.workers == 1:
            return [fn(item) for item in items]
        self.start()
        return list(self._executor.map(fn, items))

    def graceful_shutdown(self):
        """Wait for running tasks and release the pool."""
        if self._executor is not None:
            self.logger.debug("Shutting down worker pool")
            self._executor.shutdown(wait=True, cancel_futures=True)
            self._executor = None

    def __enter__(self) -> "TaskHandler":
        self.start()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.graceful_shutdown()
        return False
