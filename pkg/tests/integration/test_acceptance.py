"""
End-to-end checks on the reference automata and on seeded studies.

The larger groups here take a few seconds each and are marked slow.
"""

import math

import numpy as np
import pytest
from sympy import isprime, primerange

from src.algebra.groups import (
    alternating_group,
    circular_group,
    contains,
    group_order,
    is_primitive,
    is_transitive,
    natural_group,
    normal_closure,
    recognize_sym_alt,
)
from src.algebra.permutation import Permutation, random_permutation
from src.automata.embedding import generated_group
from src.automata.formats import cyclic_automaton
from src.config import configure
from src.errors import SameOrders
from src.experiments import reporting, studies
from src.main import run
from src.models import SymAltKind, TrialConfig
from src.theory.classifier import classify
from src.theory.prediction import sign_bound
from src.theory.signatures import circulant_rank, signature_tuple, union_sign_rank
from src.theory.witness import witness_prime_cycle_2, witness_prime_cycle_n
from tests.conftest import perm

REMARK_SIGMA = "(1,6,7,3,12,5)(2,8)(9,11)"
REMARK_TAU = "(1,9,8)(3,5,7,6,10,11)(4,12)"


@pytest.mark.slow
class TestReferenceGroups:
    """Orders of the reference automata."""

    def test_union_of_cyclic_automata(self, union_automaton_fixture, cyclic2_perms, cyclic3_perms):
        """Test that the disjoint union reaches the sign-span bound of rank 4."""
        report = classify(union_automaton_fixture)
        assert report.structure.describe() == "DisjointCycles([2,3])"
        assert report.verified_order == 34828517376000000
        assert union_sign_rank([cyclic2_perms, cyclic3_perms]) == 4
        assert report.sign_rank == 4
        assert report.match

    def test_equal_orders_still_full(self):
        """Test a pair of equal orders: hypotheses fail, yet the group is S_12 x S_12."""
        sigma, tau = perm(REMARK_SIGMA, 12), perm(REMARK_TAU, 12)
        report = classify(cyclic_automaton([sigma, tau]))
        assert report.verified_order == math.factorial(12) ** 2
        assert not report.hypotheses_ok
        assert "tuple of orders is not primitive" in report.prediction.reasons
        assert report.match
        with pytest.raises(SameOrders):
            witness_prime_cycle_2(sigma, tau)

    def test_order_matches_classification(self, cyclic3):
        """Test that the bare order agrees with the classification."""
        assert group_order(generated_group(cyclic3)) == classify(cyclic3).verified_order == 186624000


@pytest.mark.slow
class TestSeededStudies:
    """Statistical behaviour of the sampling studies."""

    @pytest.mark.asyncio
    async def test_no_contradiction_under_hypotheses(self):
        """Test that sampled automata satisfying the hypotheses always match their prediction."""
        report = await studies.sample_cyclic_distribution(TrialConfig(n=2, k=7, trials=120, seed=2024))
        assert report.total == 120
        assert report.mismatches_with_hypotheses == 0

    @pytest.mark.asyncio
    async def test_sign_vectors_are_uniform(self):
        """Test that each of the four sign vectors appears about a quarter of the time."""
        report = await studies.sample_cyclic_distribution(TrialConfig(n=2, k=6, trials=400, seed=7))
        for bits in ("00", "01", "10", "11"):
            share = sum(1 for r in report.records if r.sign_vector == bits) / report.total
            assert abs(share - 0.25) < 0.08

    @pytest.mark.asyncio
    async def test_exact_enumeration_k4(self):
        """Test that the k = 4 enumeration covers all 576 pairs with exact probabilities."""
        report = await studies.exact_enumeration_2(4)
        assert report.total == math.factorial(4) ** 2
        assert sum(report.probabilities().values()) == 1

    @pytest.mark.asyncio
    async def test_same_order_estimate(self):
        """Test that the estimate lies above the conjugacy lower bound within noise."""
        report = await studies.same_order_probability(8, 2000, 11)
        assert report.k2_estimate >= report.conjugacy_lower_bound - 4 * report.stderr

    @pytest.mark.asyncio
    async def test_two_states_on_twenty_letters(self):
        """Test that 5000 samples at k = 20 follow the 1/2, 1/4, 1/4 law."""
        report = await studies.sample_cyclic_distribution(TrialConfig(n=2, k=20, trials=5000, seed=20), jobs=4)
        for outcome, expected in studies.reference_distribution(2).items():
            tolerance = 0.05 if expected == 0.5 else 0.04
            assert abs(float(report.probability(outcome)) - float(expected)) <= tolerance

    @pytest.mark.asyncio
    async def test_sampling_agrees_with_enumeration_k5(self):
        """Test that a 10^4 sample at k = 5 lies within three standard errors of the exact law."""
        exact = await studies.exact_enumeration_2(5, jobs=4)
        assert exact.total == math.factorial(5) ** 2
        sample = await studies.sample_cyclic_distribution(TrialConfig(n=2, k=5, trials=10000, seed=5), jobs=4)
        p_exact = exact.probabilities()
        assert set(sample.probabilities()) <= set(p_exact)
        for outcome, p in p_exact.items():
            p = float(p)
            sigma = math.sqrt(p * (1 - p) / sample.total)
            assert abs(float(sample.probability(outcome)) - p) <= 3 * sigma + 1 / sample.total

    @pytest.mark.asyncio
    async def test_same_order_at_thirty_letters(self):
        """Test that k^2 P(o(σ) = o(τ)) at k = 30 falls in [3, 13] and the report shows the band."""
        report = await studies.same_order_probability(30, 200000, 30, jobs=4)
        assert 3 <= report.k2_estimate <= 13
        text = reporting.order_stats_text(report)
        assert "conjecture check" in text
        assert f"conjectured_band: [{report.band_lo}, {report.band_hi}]" in text


@pytest.mark.slow
class TestWitnessesAndBounds:
    """Exactness, witnesses and divisibility over seeded random instances."""

    def test_exact_with_witness_at_seven_letters(self):
        """Test every pair with distinct orders generating S_7 or A_7: exact order and a member witness."""
        rng = np.random.default_rng(7)
        checked = 0
        for _ in range(500):
            sigma, tau = random_permutation(7, rng), random_permutation(7, rng)
            if sigma.order() == tau.order():
                continue
            if recognize_sym_alt(natural_group(7, [sigma, tau])) == SymAltKind.OTHER:
                continue
            report = classify(cyclic_automaton([sigma, tau]))
            assert report.hypotheses_ok and report.match
            chain = circular_group([sigma, tau]).chain()
            witness = witness_prime_cycle_n([sigma, tau], chain)
            assert isprime(witness.prime)
            cycles = witness.cycle.cycles()
            assert len(cycles) == 1 and len(cycles[0]) == witness.prime
            assert contains(chain, witness.element())
            checked += 1
        assert checked > 100

    def test_normal_closure_of_prime_cycle(self):
        """Test that the normal closure of a p-cycle in A_k, p <= k - 3, is A_k itself."""
        rng = np.random.default_rng(10)
        for _ in range(100):
            k = int(rng.integers(6, 31))
            p = int(rng.choice(list(primerange(3, k - 2))))
            points = tuple(int(x) for x in rng.choice(k, p, replace=False))
            closure = normal_closure(alternating_group(k), Permutation.from_cycles(k, [points]))
            assert is_transitive(closure)
            assert is_primitive(closure)
            assert recognize_sym_alt(closure) == SymAltKind.ALTERNATING
            assert closure.order() == math.factorial(k) // 2

    def test_order_divides_sign_bound(self):
        """Test that the verified order divides (k!/2)^n * 2^rank for small random cyclic automata."""
        rng = np.random.default_rng(11)
        for _ in range(1000):
            n, k = int(rng.integers(1, 5)), int(rng.integers(2, 11))
            perms = [random_permutation(k, rng) for _ in range(n)]
            bound = sign_bound(k, n, circulant_rank(signature_tuple(perms)))
            assert bound % group_order(generated_group(cyclic_automaton(perms))) == 0


@pytest.mark.slow
class TestParallelReports:
    """Reports do not depend on the number of processes."""

    @pytest.fixture(autouse=True)
    def small_batches(self, monkeypatch):
        monkeypatch.setenv("MCG_EXPERIMENTS__BATCH_SIZE", "5")
        configure(None)

    @pytest.mark.parametrize(
        "argv",
        [
            ["sample", "--letters", "5", "--trials", "40", "--seed", "3", "--format", "csv"],
            ["enumerate", "--letters", "3", "--format", "csv"],
        ],
    )
    def test_csv_is_identical_across_jobs(self, argv, capsys):
        """Test byte-identical CSV output for --jobs 1 and --jobs 8."""
        assert run(argv + ["--jobs", "1"]) == 0
        serial = capsys.readouterr().out
        assert run(argv + ["--jobs", "8"]) == 0
        assert capsys.readouterr().out == serial
