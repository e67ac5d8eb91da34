"""
Seeded Monte Carlo and exhaustive studies.

Each study is planned into batches, executed by the swarm and summarised
into a report. Counts are exact integers and probabilities exact fractions,
so a report depends only on its parameters and seed.
"""

import itertools
import logging
import math
from collections import defaultdict
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

from src.config import get_settings, load_tolerance_policy, tolerance_notes
from src.core.planner import TrialPlanner
from src.core.swarm import run_batches
from src.errors import PreconditionError, SizeGuard, VerificationError
from src.experiments.trials import class_size, enumeration_size, partitions
from src.models import (
    DistributionReport,
    DixonReport,
    OrderStatsReport,
    OutcomeBucket,
    SignVector,
    StudyKind,
    TrialConfig,
    TrialMode,
    TrialRecord,
)
from src.theory.signatures import circulant_rank, shape_tag

logger = logging.getLogger(__name__)

DIXON_COEFFICIENTS = (1, 1, 4, 23, 171)


def reference_distribution(n: int) -> Dict[str, Fraction]:
    """
    Limit law of the outcome of a random n-state cyclic automaton.

    The sign bits of independent uniform permutations are independent fair
    bits, and under the hypotheses the group is determined by them.
    """
    law: Dict[str, Fraction] = defaultdict(Fraction)
    for bits in itertools.product((0, 1), repeat=n):
        v = SignVector(bits=bits)
        law[f"{shape_tag(v).value}/r{circulant_rank(v)}"] += Fraction(1, 2 ** n)
    return dict(law)


def _policy_notes() -> List[str]:
    path = Path(get_settings().experiments.tolerance_policy)
    if not path.exists():
        return []
    return tolerance_notes(load_tolerance_policy(path))


def _pattern_match_rates(records: List[TrialRecord]) -> Dict[str, float]:
    hits: Dict[str, int] = defaultdict(int)
    seen: Dict[str, int] = defaultdict(int)
    for r in records:
        if r.pattern is None or not r.hypotheses_ok:
            continue
        seen[r.pattern] += 1
        hits[r.pattern] += r.match
    return {p: hits[p] / seen[p] for p in sorted(seen)}


def distribution_from_records(
    n: int,
    k: int,
    mode: TrialMode,
    seed: Optional[int],
    records: List[TrialRecord],
    reference: Optional[Dict[str, Fraction]] = None,
) -> DistributionReport:
    """Weighted outcome counts; buckets sorted by outcome key, reference 0 for outcomes the law excludes."""
    counts: Dict[str, int] = defaultdict(int)
    for r in records:
        counts[r.outcome] += r.weight
    keys = sorted(set(counts) | set(reference or {}))
    buckets = [
        OutcomeBucket(
            outcome=key,
            count=counts.get(key, 0),
            reference=float(reference.get(key, 0)) if reference is not None else None,
        )
        for key in keys
    ]
    return DistributionReport(
        n=n,
        k=k,
        mode=mode,
        seed=seed,
        total=sum(counts.values()),
        buckets=buckets,
        mismatches_with_hypotheses=sum(r.weight for r in records if not r.match and r.hypotheses_ok),
        match_rates=_pattern_match_rates(records),
        notes=_policy_notes() if reference is not None else [],
        records=records,
    )


def _require_exactness(report: DistributionReport) -> DistributionReport:
    """Classification studies fail when a prediction under the hypotheses missed the verified order."""
    if report.mismatches_with_hypotheses:
        missed = [r.trial for r in report.records if r.hypotheses_ok and not r.match]
        logger.error(f"Exactness violated at k={report.k}: trials {missed}")
        raise VerificationError(
            f"{report.mismatches_with_hypotheses} classifications under the hypotheses disagree with their prediction"
        )
    return report


async def sample_cyclic_distribution(cfg: TrialConfig, jobs: int = 1) -> DistributionReport:
    """Classify ``cfg.trials`` random cyclic automata and bucket them by outcome."""
    if cfg.mode == TrialMode.ENUMERATE:
        if cfg.n != 2:
            raise PreconditionError("enumeration is only defined for n = 2")
        return await exact_enumeration_2(cfg.k, jobs)
    batches = TrialPlanner().plan(StudyKind.SAMPLE_CYCLIC, cfg.trials, cfg.k, n=cfg.n, seed=cfg.seed)
    records = await run_batches(batches, jobs)
    report = distribution_from_records(
        cfg.n, cfg.k, TrialMode.SAMPLE, cfg.seed, records, reference_distribution(cfg.n)
    )
    logger.info(f"Sampled {cfg.trials} cyclic automata (n={cfg.n}, k={cfg.k}): {len(report.buckets)} outcomes")
    return _require_exactness(report)


async def exact_enumeration_2(k: int, jobs: int = 1) -> DistributionReport:
    """
    Exact outcome distribution over all k!² ordered pairs.

    One classification per (conjugacy class of σ, τ), weighted by the class
    size.
    """
    limit = get_settings().experiments.enumeration_max_k
    if k > limit:
        raise SizeGuard(f"enumeration is limited to k <= {limit}, got {k}")
    batches = TrialPlanner().plan(StudyKind.ENUMERATE, enumeration_size(k), k, n=2)
    records = await run_batches(batches, jobs)
    report = distribution_from_records(2, k, TrialMode.ENUMERATE, None, records, reference_distribution(2))
    logger.info(f"Enumerated {report.total} pairs for k={k} with {len(records)} classifications")
    return _require_exactness(report)


def same_order_lower_bound(k: int) -> float:
    """P(σ and τ conjugate) = Σ_λ (1/z_λ)², a lower bound for P(o(σ) = o(τ))."""
    total = math.factorial(k)
    return float(sum(Fraction(class_size(k, shape), total) ** 2 for shape in partitions(k)))


async def same_order_probability(k: int, trials: int, seed: int, jobs: int = 1) -> OrderStatsReport:
    """Estimate k² · P(o(σ) = o(τ)) for uniform σ, τ. A conjecture check, not a theorem check."""
    batches = TrialPlanner().plan(StudyKind.SAME_ORDER, trials, k, seed=seed)
    records = await run_batches(batches, jobs)
    same = sum(1 for r in records if r.flag)
    p = same / trials
    band_lo, band_hi = get_settings().experiments.same_order_band
    return OrderStatsReport(
        k=k,
        trials=trials,
        same_order_count=same,
        k2_estimate=k * k * p,
        stderr=k * k * math.sqrt(p * (1 - p) / trials),
        band_lo=band_lo,
        band_hi=band_hi,
        conjugacy_lower_bound=k * k * same_order_lower_bound(k),
    )


def dixon_reference(k: int) -> float:
    """1 - 1/k - 1/k² - 4/k³ - 23/k⁴ - 171/k⁵."""
    if k < 2:
        raise PreconditionError(f"the series needs k >= 2, got {k}")
    return 1.0 - sum(c / k ** (i + 1) for i, c in enumerate(DIXON_COEFFICIENTS))


async def dixon_frequency(k: int, trials: int, seed: int, jobs: int = 1) -> DixonReport:
    """Measured frequency of ⟨σ, τ⟩ ∈ {S_k, A_k} beside ``dixon_reference(k)``."""
    batches = TrialPlanner().plan(StudyKind.DIXON, trials, k, seed=seed)
    records = await run_batches(batches, jobs)
    hits = sum(1 for r in records if r.flag)
    frequency = hits / trials
    return DixonReport(
        k=k,
        reference=dixon_reference(k),
        trials=trials,
        hits=hits,
        frequency=frequency,
        stderr=math.sqrt(frequency * (1 - frequency) / trials),
    )


async def inverse_pair_experiment(
    k: int,
    trials: int,
    seed: int,
    jobs: int = 1,
    force_even: bool = False,
    include_identity: bool = False,
) -> DistributionReport:
    """
    Bucket ⟨(σ, σ⁻¹), (τ, τ⁻¹)⟩c over random pairs. ``match_rates`` gives, per
    parity pattern, how often the predicted shape appears when ⟨σ, τ⟩ is
    S_k or A_k.
    """
    if k < 5:
        raise PreconditionError(f"inverse pairs need k >= 5, got {k}")
    options = {"force_even": force_even, "include_identity": include_identity}
    batches = TrialPlanner().plan(StudyKind.INVERSE_PAIR, trials, k, seed=seed, options=options)
    records = await run_batches(batches, jobs)
    report = distribution_from_records(2, k, TrialMode.SAMPLE, seed, records)
    logger.info(f"Inverse pairs at k={k}: match rates {report.match_rates}")
    return report
