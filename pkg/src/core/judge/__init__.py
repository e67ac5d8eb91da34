"""
Judge service package.
"""

from .service import TrialJudge

__all__ = ["TrialJudge"]
