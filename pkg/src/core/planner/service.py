"""
Core Planner service implementation.

Splits a study into contiguous trial batches for the workers.
"""

import logging
from typing import Any, Dict, List, Optional

from src.config import get_settings
from src.models import StudyKind, TrialBatch

logger = logging.getLogger(__name__)


class TrialPlanner:
    """
    Turns a study description into an ordered list of ``TrialBatch`` tasks.

    Batches cover ``range(trials)`` without gaps or overlap; the batch id is
    the batch's position, which the merge step relies on.
    """

    def __init__(self, batch_size: Optional[int] = None):
        """Initialize the Planner."""
        self.batch_size = batch_size or get_settings().experiments.batch_size

    def plan(
        self,
        kind: StudyKind,
        trials: int,
        k: int,
        n: int = 2,
        seed: int = 0,
        options: Optional[Dict[str, Any]] = None,
    ) -> List[TrialBatch]:
        """Create the batches for ``trials`` trials of one study."""
        batches = [
            TrialBatch(
                batch_id=index,
                kind=kind,
                n=n,
                k=k,
                seed=seed,
                start=start,
                stop=min(start + self.batch_size, trials),
                options=dict(options or {}),
            )
            for index, start in enumerate(range(0, trials, self.batch_size))
        ]
        logger.info(f"Planned {kind.value}: {trials} trials in {len(batches)} batches (n={n}, k={k})")
        return batches
