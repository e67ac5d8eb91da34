"""
Group semantics of letter-independent invertible automata and their faithful
finite embedding as permutation groups on m blocks of k letters.
"""

import logging
import math
from typing import Dict, List, Tuple

from src.algebra.groups import PermGroup, embed_tuple, tuple_order_bound
from src.algebra.permutation import Permutation
from src.automata.machine import MealyAutomaton, is_invertible
from src.automata.periodic import EventuallyPeriodic
from src.automata.structure import cycles_and_depths
from src.errors import NotInvertible, NotLetterIndependent

logger = logging.getLogger(__name__)


def _require_group_semantics(automaton: MealyAutomaton) -> None:
    if not automaton.is_letter_independent():
        raise NotLetterIndependent("group semantics need transitions that ignore the input letter")
    if not is_invertible(automaton):
        raise NotInvertible("every state must permute the alphabet")


def _trajectory(automaton: MealyAutomaton, q: int) -> Tuple[List[int], List[int]]:
    """States visited from ``q`` before entering its cycle, then the cycle itself."""
    seen: Dict[int, int] = {}
    path: List[int] = []
    while q not in seen:
        seen[q] = len(path)
        path.append(q)
        q = automaton.successor(q)
    return path[: seen[q]], path[seen[q]:]


def state_semantics(automaton: MealyAutomaton, q: int) -> EventuallyPeriodic:
    """The sequence ρ_q, ρ_δ(q), ρ_δ²(q), ... as a canonical eventually periodic value."""
    _require_group_semantics(automaton)
    tail, cycle = _trajectory(automaton, q)
    return EventuallyPeriodic(
        [automaton.output_permutation(s) for s in tail],
        [automaton.output_permutation(s) for s in cycle],
    )


def embedding_length(automaton: MealyAutomaton) -> int:
    """P + L: longest tail plus the lcm of all cycle lengths."""
    successors = [automaton.successor(q) for q in range(automaton.n)]
    cycles, depths = cycles_and_depths(successors)
    return max(depths) + math.lcm(*(len(c) for c in cycles))


def faithful_embedding(automaton: MealyAutomaton) -> Tuple[int, Dict[int, List[Permutation]]]:
    """
    Map every state to the first m entries of its semantics.

    Every product of state semantics has preperiod at most P and a period
    dividing L, so it is determined by its first P + L entries.
    """
    _require_group_semantics(automaton)
    m = embedding_length(automaton)
    images = {q: state_semantics(automaton, q).prefix(m) for q in range(automaton.n)}
    return m, images


def generated_group(automaton: MealyAutomaton) -> PermGroup:
    """⟨ρ_q | q ∈ Q⟩ acting blockwise on m copies of the alphabet."""
    m, images = faithful_embedding(automaton)
    tuples = [images[q] for q in range(automaton.n)]
    group = PermGroup(
        m * automaton.k,
        [embed_tuple(t) for t in tuples],
        order_bound=tuple_order_bound(tuples, automaton.k),
    )
    logger.debug(f"Embedded {automaton.n}-state automaton on {m} x {automaton.k} points")
    return group
