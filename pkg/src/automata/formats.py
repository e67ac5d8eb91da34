"""
Automaton file formats.

Three line-oriented ASCII forms, ``#`` starting a comment:

    mealy v1                  cyclic v1                 union v1
    states <n>                letters <k>               <cyclic block>
    letters <k>               state <q> <cycles>        ---
    trans <q> <i> <q'> <j>    ...                       <cyclic block>

In the full form ``trans q i q' j`` means δ_i(q) = q' and ρ_q(i) = j.
States are 0-based, letters 1-based. The format is detected from the first
token.
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from src.algebra.permutation import Permutation, format_cycles, parse_cycles
from src.automata.machine import MealyAutomaton, is_invertible
from src.automata.structure import cycles_and_depths
from src.errors import IncompleteTable, MalformedCycle, ParseError

logger = logging.getLogger(__name__)

_Line = Tuple[int, List[str]]


def _tokenize(text: str) -> List[_Line]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((number, body.split()))
    return lines


def _int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line, f"{what} must be an integer, got {token!r}") from None


def _header(lines: List[_Line], keyword: str) -> Tuple[int, List[_Line]]:
    if not lines:
        raise ParseError(None, f"missing '{keyword}' line")
    number, tokens = lines[0]
    if len(tokens) != 2 or tokens[0] != keyword:
        raise ParseError(number, f"expected '{keyword} <count>'")
    value = _int(tokens[1], number, keyword)
    if value < 1:
        raise ParseError(number, f"{keyword} must be positive")
    return value, lines[1:]


def _parse_full(lines: List[_Line]) -> MealyAutomaton:
    n, lines = _header(lines, "states")
    k, lines = _header(lines, "letters")
    delta: Dict[Tuple[int, int], int] = {}
    rho: Dict[Tuple[int, int], int] = {}
    for number, tokens in lines:
        if tokens[0] != "trans" or len(tokens) != 5:
            raise ParseError(number, "expected 'trans <q> <i> <q'> <j>'")
        q, i, target, j = (_int(t, number, "field") for t in tokens[1:])
        if not (0 <= q < n and 0 <= target < n):
            raise ParseError(number, f"state outside 0..{n - 1}")
        if not (1 <= i <= k and 1 <= j <= k):
            raise ParseError(number, f"letter outside 1..{k}")
        if (q, i - 1) in delta:
            raise ParseError(number, f"duplicate transition for state {q}, letter {i}")
        delta[(q, i - 1)] = target
        rho[(q, i - 1)] = j - 1
    for q in range(n):
        for i in range(k):
            if (q, i) not in delta:
                raise IncompleteTable(q, i + 1)
    return MealyAutomaton(
        n=n,
        k=k,
        delta=tuple(tuple(delta[(q, i)] for i in range(k)) for q in range(n)),
        rho=tuple(tuple(rho[(q, i)] for i in range(k)) for q in range(n)),
    )


def _parse_cyclic_block(lines: List[_Line]) -> Tuple[int, List[Permutation]]:
    if lines and lines[0][1] == ["cyclic", "v1"]:
        lines = lines[1:]
    k, lines = _header(lines, "letters")
    perms: Dict[int, Permutation] = {}
    for number, tokens in lines:
        if tokens[0] != "state" or len(tokens) < 3:
            raise ParseError(number, "expected 'state <q> <cycle-notation>'")
        q = _int(tokens[1], number, "state")
        if q in perms:
            raise ParseError(number, f"duplicate state {q}")
        try:
            perms[q] = parse_cycles("".join(tokens[2:]), k)
        except MalformedCycle as e:
            raise ParseError(number, str(e)) from None
    if not perms:
        raise ParseError(None, "a cyclic block needs at least one state")
    if sorted(perms) != list(range(len(perms))):
        raise ParseError(None, f"states must be numbered 0..{len(perms) - 1}")
    return k, [perms[q] for q in range(len(perms))]


def _union_of_cycles(k: int, components: List[List[Permutation]]) -> MealyAutomaton:
    delta: List[Tuple[int, ...]] = []
    rho: List[Tuple[int, ...]] = []
    offset = 0
    for perms in components:
        size = len(perms)
        for q, p in enumerate(perms):
            delta.append((offset + (q + 1) % size,) * k)
            rho.append(p.images)
        offset += size
    return MealyAutomaton(n=offset, k=k, delta=tuple(delta), rho=tuple(rho))


def cyclic_automaton(perms: List[Permutation]) -> MealyAutomaton:
    """The cyclic automaton with ρ_q = perms[q] and δ(q) = q + 1 mod n."""
    return _union_of_cycles(perms[0].degree, [perms])


def union_automaton(components: List[List[Permutation]]) -> MealyAutomaton:
    """Disjoint union of cyclic automata, states numbered block after block."""
    return _union_of_cycles(components[0][0].degree, components)


def parse_automaton(text: str) -> MealyAutomaton:
    lines = _tokenize(text)
    if not lines:
        raise ParseError(None, "empty automaton file")
    number, tokens = lines[0]
    if tokens == ["mealy", "v1"]:
        return _parse_full(lines[1:])
    if tokens == ["cyclic", "v1"]:
        k, perms = _parse_cyclic_block(lines[1:])
        return _union_of_cycles(k, [perms])
    if tokens == ["union", "v1"]:
        blocks: List[List[_Line]] = [[]]
        for entry in lines[1:]:
            if entry[1] == ["---"]:
                blocks.append([])
            else:
                blocks[-1].append(entry)
        parsed = [_parse_cyclic_block(b) for b in blocks]
        letters = {k for k, _ in parsed}
        if len(letters) != 1:
            raise ParseError(None, f"union components disagree on the alphabet size: {sorted(letters)}")
        return _union_of_cycles(letters.pop(), [perms for _, perms in parsed])
    raise ParseError(number, f"unknown format header {' '.join(tokens)!r}")


def load_automaton(path: Path) -> MealyAutomaton:
    with open(path) as f:
        automaton = parse_automaton(f.read())
    logger.debug(f"Loaded {path}: {automaton.n} states, {automaton.k} letters")
    return automaton


def _consecutive_cycles(automaton: MealyAutomaton) -> Optional[List[List[int]]]:
    """The cycles when every state lies on a cycle of consecutive states q -> q + 1, else None."""
    if not automaton.is_letter_independent():
        return None
    successors = [automaton.successor(q) for q in range(automaton.n)]
    cycles, depths = cycles_and_depths(successors)
    if any(depths):
        return None
    for cyc in cycles:
        if cyc != list(range(cyc[0], cyc[0] + len(cyc))):
            return None
    return cycles


def _cyclic_block(automaton: MealyAutomaton, states: List[int]) -> List[str]:
    lines = [f"letters {automaton.k}"]
    for local, q in enumerate(states):
        lines.append(f"state {local} {format_cycles(automaton.output_permutation(q))}")
    return lines


def serialize(automaton: MealyAutomaton) -> str:
    """Text in the most compact form that represents ``automaton``."""
    cycles = _consecutive_cycles(automaton) if is_invertible(automaton) else None
    if cycles is not None and len(cycles) == 1:
        return "\n".join(["cyclic v1"] + _cyclic_block(automaton, cycles[0])) + "\n"
    if cycles is not None:
        lines = ["union v1"]
        for index, cyc in enumerate(cycles):
            if index:
                lines.append("---")
            lines.extend(_cyclic_block(automaton, cyc))
        return "\n".join(lines) + "\n"
    lines = ["mealy v1", f"states {automaton.n}", f"letters {automaton.k}"]
    for q in range(automaton.n):
        for i in range(automaton.k):
            lines.append(f"trans {q} {i + 1} {automaton.delta[q][i]} {automaton.rho[q][i] + 1}")
    return "\n".join(lines) + "\n"
