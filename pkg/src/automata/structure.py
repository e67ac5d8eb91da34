"""Structural classification of the transition digraph."""

import logging
from typing import Dict, List, Set, Tuple

from src.automata.machine import MealyAutomaton
from src.models import StructureClass, StructureKind

logger = logging.getLogger(__name__)


def cycles_and_depths(successors: List[int]) -> Tuple[List[List[int]], List[int]]:
    """
    Cycles of the functional graph ``q -> successors[q]`` and, for every
    state, its distance to the cycle it falls into.

    Each cycle is listed from its smallest state, following the map; cycles
    are ordered by smallest state.
    """
    n = len(successors)
    on_cycle = [False] * n
    cycles: List[List[int]] = []
    for start in range(n):
        path: Dict[int, int] = {}
        q = start
        while q not in path and not on_cycle[q]:
            path[q] = len(path)
            q = successors[q]
        if not on_cycle[q] and q in path:
            cyc = [q]
            r = successors[q]
            while r != q:
                cyc.append(r)
                r = successors[r]
            for r in cyc:
                on_cycle[r] = True
            low = cyc.index(min(cyc))
            cycles.append(cyc[low:] + cyc[:low])
    depths = [0] * n
    for start in range(n):
        d, q = 0, start
        while not on_cycle[q]:
            q = successors[q]
            d += 1
        depths[start] = d
    return sorted(cycles, key=lambda c: c[0]), depths


def classify_structure(automaton: MealyAutomaton) -> StructureClass:
    if not automaton.is_letter_independent():
        return StructureClass(kind=StructureKind.LETTER_DEPENDENT)
    successors = [automaton.successor(q) for q in range(automaton.n)]
    cycles, depths = cycles_and_depths(successors)

    if not any(depths):
        if len(cycles) == 1:
            return StructureClass(kind=StructureKind.CYCLIC, n=automaton.n)
        return StructureClass(kind=StructureKind.DISJOINT_CYCLES, sizes=sorted(len(c) for c in cycles))

    if len(cycles) > 1:
        return StructureClass(kind=StructureKind.GENERAL_LETTER_INDEPENDENT)

    if len(cycles[0]) == 1:
        root = cycles[0][0]
        children: Dict[int, List[int]] = {q: [] for q in range(automaton.n)}
        for q, target in enumerate(successors):
            if q != root:
                children[target].append(q)
        if all(len(c) <= 1 for c in children.values()):
            return StructureClass(kind=StructureKind.PATH, n=automaton.n)
        depth = max(depths)
        arity = len(children[root])
        uniform = all(
            len(children[q]) == (arity if depths[q] < depth else 0) for q in range(automaton.n)
        )
        if arity >= 2 and uniform:
            return StructureClass(kind=StructureKind.CONVERGING_TREE, arity=arity, depth=depth)

    return StructureClass(kind=StructureKind.CYCLE_WITHOUT_EXIT)


def _reachable(automaton: MealyAutomaton, q: int) -> Set[int]:
    seen = {q}
    queue = [q]
    while queue:
        r = queue.pop()
        for s in set(automaton.delta[r]):
            if s not in seen:
                seen.add(s)
                queue.append(s)
    return seen


def is_cycle_without_exit(automaton: MealyAutomaton) -> bool:
    """Every strongly connected component carrying a cycle is a single cycle with no exit."""
    reach = [_reachable(automaton, q) for q in range(automaton.n)]
    for q in range(automaton.n):
        component = {r for r in reach[q] if q in reach[r]}
        targets = set(automaton.delta[q])
        has_cycle = len(component) > 1 or q in targets
        if not has_cycle:
            continue
        if len(targets) != 1 or not targets <= component:
            return False
    return True
