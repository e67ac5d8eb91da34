"""
Planner -> Worker -> Judge execution of a planned study.

Batches run concurrently, bounded by ``jobs``; with more than one job the
trial kernels run on a process pool. Records are merged by trial index, so
the merged list does not depend on ``jobs``.
"""

import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

from src.config import configure, get_settings
from src.core.judge import TrialJudge
from src.core.worker import TrialWorker
from src.errors import VerificationError
from src.models import BatchResult, TrialBatch, TrialRecord

logger = logging.getLogger(__name__)


async def run_batches(batches: List[TrialBatch], jobs: int = 1) -> List[TrialRecord]:
    """Execute and validate ``batches``; returns every record ordered by trial index."""
    jobs = max(1, jobs)
    judge = TrialJudge()
    executor: Optional[ProcessPoolExecutor] = None
    if jobs > 1:
        executor = ProcessPoolExecutor(max_workers=jobs, initializer=configure, initargs=(get_settings(),))
    workers = [TrialWorker(f"worker-{i}", executor) for i in range(jobs)]
    semaphore = asyncio.Semaphore(jobs)

    async def run_one(batch: TrialBatch) -> BatchResult:
        async with semaphore:
            result = await workers[batch.batch_id % jobs].execute_task(batch)
        result.validation = judge.validate_result(batch, result)
        return result

    try:
        results = await asyncio.gather(*(run_one(b) for b in batches))
    finally:
        if executor is not None:
            executor.shutdown()

    for result in results:
        if judge.is_fatal(result.validation):
            raise VerificationError(f"batch {result.batch_id} rejected: {result.validation.validation_notes}")
    records = sorted((r for result in results for r in result.records), key=lambda r: r.trial)
    logger.info(f"Merged {len(records)} records from {len(results)} batches")
    return records
