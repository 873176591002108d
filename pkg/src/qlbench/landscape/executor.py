"""
Parallel evaluation of landscape rows.
"""

from __future__ import annotations

import contextvars
import time
from collections.abc import Iterable
from concurrent.futures import FIRST_EXCEPTION, Future, ThreadPoolExecutor, wait
from dataclasses import dataclass
from typing import Callable, Optional, TypeVar

from qlbench.core.logging import get_logger

logger = get_logger(__name__)

T = TypeVar("T")


@dataclass
class ProcessingStats:
    """Statistics for row evaluation"""

    rows_completed: int = 0
    points_completed: int = 0
    total_time: float = 0.0
    throughput: float = 0.0  # points per second

    def update(self, rows: int, points: int, elapsed: float) -> None:
        """Update statistics"""
        self.rows_completed += rows
        self.points_completed += points
        self.total_time += elapsed
        self.throughput = self.points_completed / self.total_time if self.total_time > 0 else 0.0


class RowExecutor:
    """
    Evaluates grid rows on a bounded thread pool.

    Each row is an independent task; results are keyed by row index, so the
    completion order never affects the assembled matrix.
    """

    def __init__(self, max_workers: int = 1) -> None:
        """
        Initialize the executor.

        Args:
            max_workers: Maximum number of rows evaluated at once
        """
        if max_workers < 1:
            raise ValueError(f"max_workers must be at least 1, got {max_workers}")
        self.max_workers = max_workers
        self.stats = ProcessingStats()

    def run(
        self,
        rows: Iterable[int],
        evaluate: Callable[[int], T],
        on_row_done: Optional[Callable[[int, T], None]] = None,
        points_per_row: int = 1,
    ) -> dict[int, T]:
        """
        Evaluate rows and collect their results.

        on_row_done is called once per finished row, from the worker thread.
        The first failure cancels rows that have not started; rows already
        running are allowed to finish (and reported) before it is re-raised.

        Args:
            rows: Row indices to evaluate
            evaluate: Row index -> row result
            on_row_done: Callback receiving (row index, result)
            points_per_row: Grid points per row, for statistics

        Returns:
            Mapping row index -> result for all rows
        """
        pending = list(rows)
        start_time = time.time()
        results: dict[int, T] = {}

        def task(index: int) -> T:
            result = evaluate(index)
            if on_row_done is not None:
                on_row_done(index, result)
            return result

        if self.max_workers == 1:
            for index in pending:
                results[index] = task(index)
        else:
            with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
                # each row runs in a copy of the caller's context so bound log fields follow it
                futures: dict[Future[T], int] = {
                    pool.submit(contextvars.copy_context().run, task, i): i for i in pending
                }
                _, not_done = wait(futures, return_when=FIRST_EXCEPTION)
                for future in not_done:
                    future.cancel()
                wait(not_done)
                errors = [f.exception() for f in futures if f.done() and not f.cancelled()]
                first_error = next((e for e in errors if e is not None), None)
                if first_error is not None:
                    raise first_error
                results = {futures[f]: f.result() for f in futures}

        elapsed = time.time() - start_time
        self.stats.update(len(results), len(results) * points_per_row, elapsed)
        logger.info(
            "rows_evaluated",
            rows=len(results),
            workers=self.max_workers,
            elapsed=f"{elapsed:.2f}s",
            throughput=f"{self.stats.throughput:.2f} points/s",
        )
        return results
