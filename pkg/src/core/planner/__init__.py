"""Planner service package."""

from .service import TrialPlanner

__all__ = ["TrialPlanner"]
