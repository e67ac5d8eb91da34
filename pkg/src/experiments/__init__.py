"""
Seeded studies: trial kernels and report renderers.

The study drivers live in ``src.experiments.studies``; they depend on the
swarm in ``src.core``, which in turn runs the kernels defined here.
"""

from .reporting import classify_csv, sample_csv, summary_csv
from .trials import enumerate_trial, sample_cyclic_trial, trial_rng

__all__ = ["trial_rng", "sample_cyclic_trial", "enumerate_trial", "sample_csv", "summary_csv", "classify_csv"]
