"""
Core Worker service implementation.

Executes trial batches, in process or on a process pool.
"""

import asyncio
import logging
import time
from concurrent.futures import Executor
from typing import List, Optional

from src.experiments.trials import (
    dixon_trial,
    enumerate_trial,
    inverse_pair_trial,
    same_order_trial,
    sample_cyclic_trial,
)
from src.models import BatchResult, StudyKind, TaskStatus, TrialBatch, TrialRecord

logger = logging.getLogger(__name__)


def execute_batch(batch: TrialBatch) -> List[TrialRecord]:
    """
    Run every trial of ``batch``.

    Routes to the trial kernel for the batch's study kind. Top-level so a
    process pool can pickle it.
    """
    trials = range(batch.start, batch.stop)
    if batch.kind == StudyKind.SAMPLE_CYCLIC:
        return [sample_cyclic_trial(batch.n, batch.k, batch.seed, t) for t in trials]
    if batch.kind == StudyKind.ENUMERATE:
        return [enumerate_trial(batch.k, t) for t in trials]
    if batch.kind == StudyKind.SAME_ORDER:
        return [same_order_trial(batch.k, batch.seed, t) for t in trials]
    if batch.kind == StudyKind.DIXON:
        return [dixon_trial(batch.k, batch.seed, t) for t in trials]
    if batch.kind == StudyKind.INVERSE_PAIR:
        return [
            inverse_pair_trial(
                batch.k,
                batch.seed,
                t,
                force_even=batch.options.get("force_even", False),
                include_identity=batch.options.get("include_identity", False),
            )
            for t in trials
        ]
    raise ValueError(f"Unknown study kind: {batch.kind}")


class TrialWorker:
    """
    Stateless batch executor in the swarm.

    Workers execute batches and return results for validation. With an
    executor the CPU work runs there; otherwise it runs on the event loop's
    thread.
    """

    def __init__(self, worker_id: str, executor: Optional[Executor] = None):
        """Initialize the Worker."""
        self.worker_id = worker_id
        self.executor = executor

    async def execute_task(self, batch: TrialBatch) -> BatchResult:
        """Execute a single batch; failures become a FAILED result instead of raising."""
        started = time.perf_counter()
        try:
            if self.executor is None:
                records = execute_batch(batch)
            else:
                loop = asyncio.get_running_loop()
                records = await loop.run_in_executor(self.executor, execute_batch, batch)
            status, error = TaskStatus.COMPLETE, None
        except Exception as e:
            logger.error(f"Batch {batch.batch_id} failed on {self.worker_id}: {e}", exc_info=True)
            records, status, error = [], TaskStatus.FAILED, f"{type(e).__name__}: {e}"
        elapsed = int((time.perf_counter() - started) * 1000)
        logger.debug(f"Worker {self.worker_id} finished batch {batch.batch_id} in {elapsed} ms")
        return BatchResult(
            batch_id=batch.batch_id,
            worker_id=self.worker_id,
            status=status,
            records=records,
            execution_time_ms=elapsed,
            error_message=error,
        )
