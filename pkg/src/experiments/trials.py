"""
Single-trial kernels executed by the workers.

Every kernel is a top-level function of plain arguments so it can run in a
worker process. Random draws come from a generator derived from
(seed, trial index) alone, which keeps results independent of how trials are
split into batches or spread over processes.
"""

import itertools
import math
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from src.algebra.groups import natural_group, recognize_sym_alt
from src.algebra.permutation import Permutation, compose, random_permutation, transposition
from src.automata.formats import cyclic_automaton
from src.config import get_settings
from src.models import ClassificationReport, SymAltKind, TrialRecord
from src.theory.classifier import classify, inverse_pair_group, outcome_key


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Generator for one trial: numpy's SeedSequence hash of the pair (seed, trial)."""
    return np.random.default_rng(np.random.SeedSequence([seed, trial]))


def _draw(k: int, count: int, rng: np.random.Generator) -> List[Permutation]:
    return [random_permutation(k, rng) for _ in range(count)]


def _record(trial: int, report: ClassificationReport, weight: int = 1) -> TrialRecord:
    return TrialRecord(
        trial=trial,
        weight=weight,
        outcome=outcome_key(report),
        sign_vector=str(report.sign_vector) if report.sign_vector else "",
        sign_rank=report.sign_rank,
        shape=report.shape.value if report.shape else "",
        predicted_order=report.predicted_order,
        verified_order=report.verified_order,
        match=report.match,
        hypotheses_ok=report.hypotheses_ok,
    )


def sample_cyclic_trial(n: int, k: int, seed: int, trial: int) -> TrialRecord:
    """Classify a uniformly random n-state k-letter cyclic automaton."""
    perms = _draw(k, n, trial_rng(seed, trial))
    with_witness = get_settings().experiments.compute_witnesses
    return _record(trial, classify(cyclic_automaton(perms), with_witness=with_witness))


def partitions(k: int) -> List[Tuple[int, ...]]:
    """Partitions of k in decreasing order, largest parts first."""
    def parts(rest: int, largest: int):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, largest), 0, -1):
            for tail in parts(rest - first, first):
                yield (first,) + tail
    return list(parts(k, k))


def class_size(k: int, shape: Tuple[int, ...]) -> int:
    """k! / z_λ for the cycle type λ."""
    z = 1
    for length in set(shape):
        count = shape.count(length)
        z *= length ** count * math.factorial(count)
    return math.factorial(k) // z


def _representative(k: int, shape: Tuple[int, ...]) -> Permutation:
    cycles, start = [], 0
    for length in shape:
        cycles.append(tuple(range(start, start + length)))
        start += length
    return Permutation.from_cycles(k, cycles)


@lru_cache(maxsize=8)
def enumeration_plan(k: int) -> Tuple[Tuple[Tuple[int, ...], ...], int]:
    """Cycle types of S_k and k!; enumeration index i * k! + j pairs class i with the j-th permutation."""
    return tuple(partitions(k)), math.factorial(k)


@lru_cache(maxsize=8)
def _all_permutations(k: int) -> Tuple[Permutation, ...]:
    return tuple(Permutation._wrap(p) for p in itertools.permutations(range(k)))


def enumeration_size(k: int) -> int:
    shapes, total = enumeration_plan(k)
    return len(shapes) * total


def enumerate_trial(k: int, index: int) -> TrialRecord:
    """
    One (class representative, τ) pair of the exhaustive n = 2 enumeration.

    Simultaneous conjugation does not change the group, so every σ in the
    class behaves like its representative; the record carries the class size
    as its weight and the weights sum to k!².
    """
    shapes, total = enumeration_plan(k)
    shape = shapes[index // total]
    sigma = _representative(k, shape)
    tau = _all_permutations(k)[index % total]
    report = classify(cyclic_automaton([sigma, tau]))
    return _record(index, report, weight=class_size(k, shape))


def same_order_trial(k: int, seed: int, trial: int) -> TrialRecord:
    sigma, tau = _draw(k, 2, trial_rng(seed, trial))
    return TrialRecord(trial=trial, outcome="same" if sigma.order() == tau.order() else "different",
                       flag=sigma.order() == tau.order())


def dixon_trial(k: int, seed: int, trial: int) -> TrialRecord:
    """Whether two uniform permutations generate S_k or A_k."""
    sigma, tau = _draw(k, 2, trial_rng(seed, trial))
    kind = recognize_sym_alt(natural_group(k, [sigma, tau]))
    return TrialRecord(trial=trial, outcome=kind.value, flag=kind != SymAltKind.OTHER)


def _make_even(p: Permutation) -> Permutation:
    return compose(p, transposition(p.degree, 0, 1)) if p.signature() == -1 else p


def inverse_pair_trial(
    k: int, seed: int, trial: int, force_even: bool = False, include_identity: bool = False
) -> TrialRecord:
    """
    Classify ⟨(σ, σ⁻¹), (τ, τ⁻¹)⟩c for a random pair. Trial 0 uses σ = τ = e
    when ``include_identity`` is set.
    """
    if include_identity and trial == 0:
        sigma = tau = Permutation.identity(k)
    else:
        sigma, tau = _draw(k, 2, trial_rng(seed, trial))
    if force_even:
        sigma, tau = _make_even(sigma), _make_even(tau)
    pattern = "-".join("odd" if p.signature() == -1 else "even" for p in (sigma, tau))
    report = inverse_pair_group(sigma, tau)
    record = _record(trial, report)
    record.pattern = pattern
    record.hypotheses_ok = recognize_sym_alt(natural_group(k, [sigma, tau])) != SymAltKind.OTHER
    return record
