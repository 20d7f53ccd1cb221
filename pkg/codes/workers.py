"""
Background Workers for CodeClass

Per-code and per-residual tasks are independent, so they are spread over a
process pool. Results always come back in submission order, which keeps the
merged output identical for every worker count.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence, TypeVar

logger = logging.getLogger(__name__)

Payload = TypeVar("Payload")
Result = TypeVar("Result")


class WorkerPool:
    """
    Runs a task function over many payloads, in-process or on a process pool.

    The pool is created lazily on first use and shut down by stop() or when
    the context manager exits.

    Example:
        with WorkerPool(jobs=4, label="extend") as pool:
            results = pool.map(extension_task, payloads)
    """

    def __init__(self, jobs: int = 1, label: str = "tasks"):
        """
        Initialize the worker pool.

        Args:
            jobs: number of worker processes; 1 runs tasks inline
            label: name used in log messages
        """
        if jobs < 1:
            raise ValueError("jobs must be at least 1")
        self.jobs = jobs
        self.label = label
        self._executor: Optional[ProcessPoolExecutor] = None

    def __enter__(self) -> "WorkerPool":
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        self.stop()

    def _ensure_executor(self) -> ProcessPoolExecutor:
        if self._executor is None:
            logger.debug("starting %d worker processes for %s", self.jobs, self.label)
            self._executor = ProcessPoolExecutor(max_workers=self.jobs)
        return self._executor

    def map(self, task: Callable[[Payload], Result], payloads: Iterable[Payload]) -> List[Result]:
        """Apply `task` to every payload; results keep the payload order."""
        items: Sequence[Payload] = list(payloads)
        logger.debug("%s: %d tasks on %d worker(s)", self.label, len(items), self.jobs)
        if self.jobs == 1 or len(items) <= 1:
            return [task(item) for item in items]
        chunksize = max(1, len(items) // (self.jobs * 8))
        try:
            return list(self._ensure_executor().map(task, items, chunksize=chunksize))
        except Exception as e:
            logger.error("%s: worker failed: %s", self.label, e)
            raise

    def stop(self) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None
            logger.debug("worker processes for %s stopped", self.label)
