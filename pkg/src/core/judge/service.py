"""
Core Judge service implementation.

Validates worker results before they are merged into a report.
"""

import logging
from typing import List

from src.models import BatchResult, StudyKind, TaskStatus, TrialBatch, ValidationResult

logger = logging.getLogger(__name__)

# Constraint names, as listed in ValidationResult.failed_constraints.
EXECUTION = "execution"
COVERAGE = "coverage"
EXACTNESS = "exactness"

# Studies whose records must satisfy "match=false implies hypotheses_ok=false".
_EXACT_STUDIES = (StudyKind.SAMPLE_CYCLIC, StudyKind.ENUMERATE)


class TrialJudge:
    """
    Quality gate of the swarm.

    A result is accepted when the batch ran, covered exactly its trial range
    and, for classification studies, no record contradicts the exactness
    theorem. Only the first two are fatal here; exactness failures are logged
    per batch and the study raises once the whole report is merged.
    """

    def validate_result(self, batch: TrialBatch, result: BatchResult) -> ValidationResult:
        """Run the validation pipeline on a batch result."""
        if result.status != TaskStatus.COMPLETE:
            return ValidationResult(
                is_valid=False,
                validation_notes=f"Batch error: {result.error_message}",
                failed_constraints=[EXECUTION],
            )

        failed: List[str] = []
        notes: List[str] = []
        trials = [r.trial for r in result.records]
        if trials != list(range(batch.start, batch.stop)):
            failed.append(COVERAGE)
            notes.append(f"expected trials {batch.start}..{batch.stop - 1}, got {len(trials)} records")

        if batch.kind in _EXACT_STUDIES:
            offending = [r.trial for r in result.records if not r.match and r.hypotheses_ok]
            if offending:
                failed.append(EXACTNESS)
                notes.append(f"match=false under the hypotheses for trials {offending}")
                logger.warning(f"Batch {batch.batch_id}: exactness violated by trials {offending}")

        return ValidationResult(
            is_valid=not failed,
            validation_notes="; ".join(notes) or "ok",
            failed_constraints=failed,
        )

    def is_fatal(self, validation: ValidationResult) -> bool:
        return any(c != EXACTNESS for c in validation.failed_constraints)
