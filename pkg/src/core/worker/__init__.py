"""Worker service package."""

from .service import TrialWorker, execute_batch

__all__ = ["TrialWorker", "execute_batch"]
