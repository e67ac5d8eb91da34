"""Predicted groups A_k^n ⋊ P for cyclic automata and their unions."""

import logging
from typing import List, Sequence

from src.algebra.groups import alternating_order, natural_group, recognize_sym_alt
from src.algebra.permutation import Permutation
from src.models import GroupPrediction, PredictionLevel, SymAltKind
from src.theory.signatures import (
    circulant_rank,
    orders_tuple_primitive,
    shape_from_rows,
    shape_tag,
    signature_tuple,
    union_sign_rank,
    union_sign_rows,
)

logger = logging.getLogger(__name__)


def sign_bound(k: int, m: int, rank: int) -> int:
    """(k!/2)^m * 2^rank, the order of A_k^m ⋊ P for a sign span of that rank."""
    return alternating_order(k) ** m * 2 ** rank


def check_hypotheses(perms: Sequence[Permutation]) -> List[str]:
    """Reasons the exactness theorem does not apply; empty when it does."""
    k = perms[0].degree
    reasons = []
    if not orders_tuple_primitive(perms):
        reasons.append("tuple of orders is not primitive")
    if recognize_sym_alt(natural_group(k, perms)) == SymAltKind.OTHER:
        reasons.append("permutations generate neither S_k nor A_k")
    if k <= 5:
        reasons.append("alphabet size must exceed 5")
    return reasons


def predicted_group_cyclic(perms: Sequence[Permutation]) -> GroupPrediction:
    """
    Prediction for the cyclic automaton with outputs ``perms``.

    A single state generates the cyclic group of its output, so that case is
    always exact. Otherwise the order is (k!/2)^n * 2^rank; when the
    hypotheses fail it is still returned, at the heuristic level.
    """
    k = perms[0].degree
    vector = signature_tuple(perms)
    rank = circulant_rank(vector)
    reasons = check_hypotheses(perms)
    if len(perms) == 1:
        predicted, level = perms[0].order(), PredictionLevel.EXACT
    else:
        predicted = sign_bound(k, len(perms), rank)
        level = PredictionLevel.HEURISTIC if reasons else PredictionLevel.EXACT
    return GroupPrediction(
        k=k,
        n=len(perms),
        sign_vector=vector,
        sign_rank=rank,
        predicted_order=predicted,
        shape_tag=shape_tag(vector),
        level=level,
        hypotheses_ok=not reasons,
        reasons=reasons,
    )


def predicted_group_union(components: Sequence[Sequence[Permutation]]) -> GroupPrediction:
    """Bound (k!/2)^lcm * 2^union_sign_rank for a disjoint union of cyclic components."""
    rows = union_sign_rows(components)
    length = len(rows[0])
    rank = union_sign_rank(components)
    k = components[0][0].degree
    vector = signature_tuple([p for comp in components for p in comp])
    return GroupPrediction(
        k=k,
        n=length,
        sign_vector=vector,
        sign_rank=rank,
        predicted_order=sign_bound(k, length, rank),
        shape_tag=shape_from_rows(rows, length),
        level=PredictionLevel.BOUND,
        hypotheses_ok=False,
        reasons=["disjoint unions are predicted up to the sign-span bound only"],
    )
