"""
Unit tests for the Planner -> Worker -> Judge pipeline.
"""

import pytest

from src.core import TrialJudge, TrialPlanner, TrialWorker, execute_batch, run_batches
from src.core.judge.service import COVERAGE, EXACTNESS, EXECUTION
from src.errors import VerificationError
from src.models import BatchResult, StudyKind, TaskStatus, TrialBatch, TrialRecord


def batch(kind=StudyKind.SAMPLE_CYCLIC, start=0, stop=3, k=3):
    return TrialBatch(batch_id=0, kind=kind, k=k, seed=1, start=start, stop=stop)


class TestTrialPlanner:
    """Splitting studies into batches."""

    def test_batches_cover_trials(self):
        """Test contiguous, non-overlapping batches in id order."""
        batches = TrialPlanner(batch_size=3).plan(StudyKind.DIXON, 7, 5, seed=4)
        assert [(b.start, b.stop) for b in batches] == [(0, 3), (3, 6), (6, 7)]
        assert [b.batch_id for b in batches] == [0, 1, 2]
        assert all(b.seed == 4 and b.k == 5 for b in batches)

    def test_default_batch_size(self):
        """Test that the batch size comes from settings."""
        assert TrialPlanner().batch_size == 50

    def test_options_are_copied(self):
        """Test that every batch gets its own options dict."""
        options = {"force_even": True}
        batches = TrialPlanner(batch_size=1).plan(StudyKind.INVERSE_PAIR, 2, 5, options=options)
        batches[0].options["force_even"] = False
        assert batches[1].options["force_even"] is True


class TestTrialWorker:
    """Batch execution."""

    def test_execute_batch_routes_by_kind(self):
        """Test that every study kind produces one record per trial."""
        for kind in StudyKind:
            records = execute_batch(batch(kind=kind, k=5))
            assert [r.trial for r in records] == [0, 1, 2]

    @pytest.mark.asyncio
    async def test_complete(self):
        """Test a successful batch."""
        result = await TrialWorker("w0").execute_task(batch())
        assert result.status == TaskStatus.COMPLETE
        assert result.worker_id == "w0"
        assert len(result.records) == 3

    @pytest.mark.asyncio
    async def test_failure_becomes_result(self, mocker):
        """Test that an exception is reported as a FAILED result."""
        mocker.patch("src.core.worker.service.execute_batch", side_effect=RuntimeError("boom"))
        result = await TrialWorker("w1").execute_task(batch())
        assert result.status == TaskStatus.FAILED
        assert result.error_message == "RuntimeError: boom"
        assert result.records == []


class TestTrialJudge:
    """Validation of batch results."""

    def result(self, records, status=TaskStatus.COMPLETE):
        return BatchResult(batch_id=0, worker_id="w", status=status, records=records)

    def test_valid(self):
        """Test that a complete, consistent batch passes."""
        records = [TrialRecord(trial=t, match=True) for t in range(3)]
        validation = TrialJudge().validate_result(batch(), self.result(records))
        assert validation.is_valid and validation.validation_notes == "ok"

    def test_execution_failure(self):
        """Test that a failed batch is invalid and fatal."""
        judge = TrialJudge()
        validation = judge.validate_result(batch(), self.result([], TaskStatus.FAILED))
        assert validation.failed_constraints == [EXECUTION]
        assert judge.is_fatal(validation)

    def test_coverage(self):
        """Test that missing trials fail coverage."""
        records = [TrialRecord(trial=0), TrialRecord(trial=2)]
        validation = TrialJudge().validate_result(batch(), self.result(records))
        assert COVERAGE in validation.failed_constraints

    def test_exactness_is_not_fatal(self):
        """Test that match=false under the hypotheses is flagged but not fatal."""
        judge = TrialJudge()
        records = [TrialRecord(trial=t, match=t != 1, hypotheses_ok=True) for t in range(3)]
        validation = judge.validate_result(batch(), self.result(records))
        assert validation.failed_constraints == [EXACTNESS]
        assert not judge.is_fatal(validation)

    def test_exactness_only_for_classification_studies(self):
        """Test that inverse-pair records are not held to exactness."""
        records = [TrialRecord(trial=t, match=False, hypotheses_ok=True) for t in range(3)]
        validation = TrialJudge().validate_result(batch(kind=StudyKind.INVERSE_PAIR), self.result(records))
        assert validation.is_valid


class TestRunBatches:
    """The asynchronous pipeline."""

    @pytest.mark.asyncio
    async def test_records_are_merged_in_order(self):
        """Test that records from several batches come back sorted by trial."""
        batches = TrialPlanner(batch_size=2).plan(StudyKind.SAME_ORDER, 5, 4, seed=2)
        records = await run_batches(batches)
        assert [r.trial for r in records] == [0, 1, 2, 3, 4]

    @pytest.mark.asyncio
    async def test_fatal_failure_raises(self, mocker):
        """Test that a failed batch aborts the study."""
        mocker.patch("src.core.worker.service.execute_batch", side_effect=ValueError("bad"))
        with pytest.raises(VerificationError):
            await run_batches(TrialPlanner(batch_size=2).plan(StudyKind.DIXON, 3, 5))

    @pytest.mark.asyncio
    @pytest.mark.slow
    async def test_independent_of_jobs(self):
        """Test that a process pool gives the same records as a single job."""
        batches = TrialPlanner(batch_size=4).plan(StudyKind.SAMPLE_CYCLIC, 12, 4, seed=8)
        assert await run_batches(batches, jobs=1) == await run_batches(batches, jobs=2)
