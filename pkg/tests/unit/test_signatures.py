"""
Unit tests for sign vectors, circulant ranks, shapes and the union bound.
"""

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.algebra.permutation import random_permutation
from src.errors import AlphabetMismatch
from src.models import PredictionLevel, ShapeTag, SignVector
from src.theory.prediction import check_hypotheses, predicted_group_cyclic, predicted_group_union, sign_bound
from src.theory.signatures import (
    circulant_rank,
    orders_tuple_primitive,
    shape_tag,
    sign_group_order,
    signature_tuple,
    union_exponent,
    union_sign_rank,
)
from tests.conftest import perm


def vector(text):
    return SignVector(bits=tuple(int(c) for c in text))


def rotation_span(bits):
    """Every XOR combination of the rotations of ``bits``, by closure."""
    n = len(bits)
    rows = {tuple(bits[s:] + bits[:s]) for s in range(n)}
    span = {(0,) * n}
    while True:
        grown = span | {tuple(a ^ b for a, b in zip(v, r)) for v in span for r in rows}
        if grown == span:
            return span
        span = grown


class TestSignVector:
    """Sign bits of permutation tuples."""

    def test_signature_tuple(self, cyclic2_perms, cyclic3_perms):
        """Test the sign vectors of the reference automata."""
        assert str(signature_tuple(cyclic2_perms)) == "01"
        assert str(signature_tuple(cyclic3_perms)) == "110"

    def test_rejects_non_binary(self):
        """Test that only 0 and 1 are sign bits."""
        with pytest.raises(ValueError):
            SignVector(bits=(0, 2))


class TestCirculantRank:
    """Ranks and shapes of rotation spans."""

    @pytest.mark.parametrize(
        "bits, rank, shape",
        [
            ("00", 0, ShapeTag.ALT_TIMES_ALT),
            ("11", 1, ShapeTag.ALT_SEMIDIRECT),
            ("01", 2, ShapeTag.SYM_TIMES_SYM),
            ("10", 2, ShapeTag.SYM_TIMES_SYM),
            ("110", 2, ShapeTag.GENERAL_SEMIDIRECT),
            ("111", 1, ShapeTag.ALT_SEMIDIRECT),
            ("100", 3, ShapeTag.SYM_TIMES_SYM),
            ("1010", 2, ShapeTag.GENERAL_SEMIDIRECT),
            ("1", 1, ShapeTag.SYM_TIMES_SYM),
            ("0", 0, ShapeTag.ALT_TIMES_ALT),
        ],
    )
    def test_rank_and_shape(self, bits, rank, shape):
        """Test rank and shape on small sign vectors."""
        assert circulant_rank(vector(bits)) == rank
        assert shape_tag(vector(bits)) == shape
        assert sign_group_order(vector(bits)) == 2 ** rank

    @given(st.lists(st.integers(min_value=0, max_value=1), min_size=1, max_size=8))
    def test_rank_is_rotation_invariant(self, bits):
        """Test that rotating the vector does not change its rank."""
        rotated = bits[1:] + bits[:1]
        assert circulant_rank(SignVector(bits=tuple(bits))) == circulant_rank(SignVector(bits=tuple(rotated)))

    @given(st.lists(st.integers(min_value=0, max_value=1), min_size=1, max_size=8))
    def test_rank_bounds(self, bits):
        """Test 0 <= rank <= n, with rank 0 only for the zero vector."""
        rank = circulant_rank(SignVector(bits=tuple(bits)))
        assert 0 <= rank <= len(bits)
        assert (rank == 0) == (not any(bits))

    @pytest.mark.parametrize("n", range(1, 9))
    def test_sign_group_order_matches_span(self, n):
        """Test 2^rank against the size of the rotation span, for every vector of length n."""
        for bits in itertools.product((0, 1), repeat=n):
            assert sign_group_order(SignVector(bits=bits)) == len(rotation_span(list(bits)))


class TestOrdersPrimitive:
    """Primitivity of the tuple of orders."""

    @pytest.mark.parametrize(
        "texts, expected",
        [
            (["(1,6,4,3)(2,5)", "(2,3)(4,5,6)"], True),
            (["(1,2,3)", "(4,5,6)"], False),
            (["(1,2)", "(1,2,3)", "(1,2)", "(1,2,3)"], False),
            (["(1,2)"], True),
        ],
    )
    def test_examples(self, texts, expected):
        """Test primitivity on small tuples."""
        assert orders_tuple_primitive([perm(t, 6) for t in texts]) is expected


class TestUnionBound:
    """Inclusion-exclusion exponent and the union sign rank."""

    @pytest.mark.parametrize("sizes, expected", [([2, 2, 2], 2), ([2, 3, 5], 8), ([4], 4), ([2, 3], 4), ([4, 6], 8)])
    def test_union_exponent(self, sizes, expected):
        """Test u on documented and hand-computed size lists."""
        assert union_exponent(sizes) == expected

    def test_union_exponent_needs_sizes(self):
        """Test that an empty size list is rejected."""
        with pytest.raises(ValueError):
            union_exponent([])

    def test_union_sign_rank_of_reference_union(self, cyclic2_perms, cyclic3_perms):
        """Test that the union of the two reference automata has sign rank 4."""
        assert union_sign_rank([cyclic2_perms, cyclic3_perms]) == 4

    def test_alphabet_mismatch(self):
        """Test that components must share an alphabet."""
        with pytest.raises(AlphabetMismatch):
            union_sign_rank([[perm("(1,2)", 2)], [perm("(1,2)", 3)]])

    @given(
        st.lists(st.integers(min_value=1, max_value=5), min_size=1, max_size=4),
        st.integers(min_value=0, max_value=2 ** 32 - 1),
    )
    def test_union_rank_below_exponent(self, sizes, seed):
        """Test that the sign rank of any union is at most u of its cycle sizes."""
        rng = np.random.default_rng(seed)
        components = [[random_permutation(4, rng) for _ in range(size)] for size in sizes]
        assert union_sign_rank(components) <= union_exponent(sizes)


class TestPrediction:
    """Predicted orders and hypotheses."""

    def test_sign_bound(self):
        """Test (k!/2)^m * 2^rank."""
        assert sign_bound(6, 2, 2) == 518400
        assert sign_bound(6, 3, 2) == 186624000
        assert sign_bound(2, 2, 2) == 4

    def test_cyclic2(self, cyclic2_perms):
        """Test the prediction for the two-state reference automaton."""
        prediction = predicted_group_cyclic(cyclic2_perms)
        assert prediction.shape_tag == ShapeTag.SYM_TIMES_SYM
        assert prediction.sign_rank == 2
        assert prediction.predicted_order == 518400
        assert prediction.hypotheses_ok and not prediction.reasons

    def test_cyclic3(self, cyclic3_perms):
        """Test the prediction for the three-state reference automaton."""
        prediction = predicted_group_cyclic(cyclic3_perms)
        assert prediction.shape_tag == ShapeTag.GENERAL_SEMIDIRECT
        assert prediction.predicted_order == 186624000

    def test_failed_hypotheses_are_reported(self):
        """Test that small alphabets and repeated orders are named."""
        reasons = check_hypotheses([perm("(1,2,3)", 5), perm("(3,4,5)", 5)])
        assert "alphabet size must exceed 5" in reasons
        assert "tuple of orders is not primitive" in reasons
        prediction = predicted_group_cyclic([perm("(1,2,3)", 5), perm("(3,4,5)", 5)])
        assert not prediction.hypotheses_ok
        assert prediction.level == PredictionLevel.HEURISTIC

    def test_hypotheses_give_exact_level(self, cyclic2_perms):
        """Test that a prediction under the hypotheses is exact."""
        assert predicted_group_cyclic(cyclic2_perms).level == PredictionLevel.EXACT

    def test_single_state_predicts_its_cyclic_group(self):
        """Test that one state predicts the order of its output, not the sign bound."""
        prediction = predicted_group_cyclic([perm("(1,2,3,4,5)", 7)])
        assert prediction.predicted_order == 5
        assert prediction.level == PredictionLevel.EXACT

    def test_non_generating_pair(self):
        """Test that a pair generating neither S_k nor A_k is flagged."""
        reasons = check_hypotheses([perm("(1,2)", 7), perm("(1,2,3)", 7)])
        assert reasons == ["permutations generate neither S_k nor A_k"]

    def test_union_prediction(self, cyclic2_perms, cyclic3_perms):
        """Test the union bound prediction."""
        prediction = predicted_group_union([cyclic2_perms, cyclic3_perms])
        assert prediction.n == 6
        assert prediction.sign_rank == 4
        assert prediction.predicted_order == 34828517376000000
        assert not prediction.hypotheses_ok
