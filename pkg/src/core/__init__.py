"""Planner / Worker / Judge swarm that executes seeded studies."""

from .judge import TrialJudge
from .planner import TrialPlanner
from .swarm import run_batches
from .worker import TrialWorker, execute_batch

__all__ = ["TrialPlanner", "TrialWorker", "TrialJudge", "execute_batch", "run_batches"]
