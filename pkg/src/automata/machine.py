"""
Mealy automata: complete deterministic letter-to-letter transducers.

States are 0-based. Letters are 0-based in the tables and 1-based in words
and files.
"""

import logging
from typing import List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.algebra.permutation import Permutation
from src.errors import LetterOutOfRange, NotInvertible, StateOutOfRange

logger = logging.getLogger(__name__)


class MealyAutomaton(BaseModel):
    """
    A transducer (Q, Σ, δ, ρ) with ``delta[q][i]`` the target state and
    ``rho[q][i]`` the output letter for input letter ``i`` in state ``q``.
    """
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Number of states")
    k: int = Field(..., ge=1, description="Alphabet size")
    delta: Tuple[Tuple[int, ...], ...] = Field(..., description="Transition table, delta[q][i]")
    rho: Tuple[Tuple[int, ...], ...] = Field(..., description="Production table, rho[q][i]")

    @model_validator(mode="after")
    def _complete_tables(self) -> "MealyAutomaton":
        for name, table, bound in (("delta", self.delta, self.n), ("rho", self.rho, self.k)):
            if len(table) != self.n or any(len(row) != self.k for row in table):
                raise ValueError(f"{name} must be a {self.n} x {self.k} table")
            if any(not 0 <= v < bound for row in table for v in row):
                raise ValueError(f"{name} entries must lie in 0..{bound - 1}")
        return self

    def output_permutation(self, q: int) -> Permutation:
        """ρ_q as a permutation of the letters."""
        if not is_row_bijective(self.rho[q]):
            raise NotInvertible(f"state {q} does not permute the letters: {self.rho[q]}")
        return Permutation._wrap(self.rho[q])

    def is_letter_independent(self) -> bool:
        return all(len(set(row)) == 1 for row in self.delta)

    def successor(self, q: int) -> int:
        """δ(q) for a letter-independent automaton."""
        return self.delta[q][0]


def is_row_bijective(row: Sequence[int]) -> bool:
    return sorted(row) == list(range(len(row)))


def is_invertible(automaton: MealyAutomaton) -> bool:
    """Every ρ_q permutes the alphabet."""
    return all(is_row_bijective(row) for row in automaton.rho)


def is_reversible(automaton: MealyAutomaton) -> bool:
    """Every δ_i permutes the states."""
    return all(
        is_row_bijective([automaton.delta[q][i] for q in range(automaton.n)])
        for i in range(automaton.k)
    )


def is_bireversible(automaton: MealyAutomaton) -> bool:
    """
    Reversible, and every output letter induces a permutation of the states:
    each state has exactly one transition producing ``j``, and those
    transitions reach pairwise distinct states.
    """
    if not is_reversible(automaton):
        return False
    for j in range(automaton.k):
        targets: List[int] = []
        for q in range(automaton.n):
            hits = [automaton.delta[q][i] for i in range(automaton.k) if automaton.rho[q][i] == j]
            if len(hits) != 1:
                return False
            targets.append(hits[0])
        if not is_row_bijective(targets):
            return False
    return True


def _check_state(automaton: MealyAutomaton, q: int) -> None:
    if not 0 <= q < automaton.n:
        raise StateOutOfRange(f"state {q} outside 0..{automaton.n - 1}")


def apply_state_to_word(automaton: MealyAutomaton, q: int, word: Sequence[int]) -> List[int]:
    """Output of state ``q`` on a word of 1-based letters: ρ_q(is) = ρ_q(i) ρ_{δ_i(q)}(s)."""
    _check_state(automaton, q)
    out = []
    for letter in word:
        if not 1 <= letter <= automaton.k:
            raise LetterOutOfRange(f"letter {letter} outside 1..{automaton.k}")
        i = letter - 1
        out.append(automaton.rho[q][i] + 1)
        q = automaton.delta[q][i]
    return out


def apply_state_word(automaton: MealyAutomaton, states: Sequence[int], word: Sequence[int]) -> List[int]:
    """Apply the states of ``states`` left to right: ρ_{qu} = ρ_u ∘ ρ_q."""
    out = list(word)
    for q in states:
        out = apply_state_to_word(automaton, q, out)
    return out
