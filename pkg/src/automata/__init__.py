"""Mealy automata: tables, file formats, structure and group semantics."""

from .embedding import faithful_embedding, generated_group, state_semantics
from .formats import cyclic_automaton, load_automaton, parse_automaton, serialize, union_automaton
from .machine import MealyAutomaton, apply_state_to_word, apply_state_word, is_bireversible, is_invertible, is_reversible
from .periodic import EventuallyPeriodic, ep_inverse, ep_is_identity, ep_multiply
from .structure import classify_structure, is_cycle_without_exit

__all__ = [
    "MealyAutomaton",
    "is_invertible",
    "is_reversible",
    "is_bireversible",
    "apply_state_to_word",
    "apply_state_word",
    "parse_automaton",
    "load_automaton",
    "serialize",
    "cyclic_automaton",
    "union_automaton",
    "classify_structure",
    "is_cycle_without_exit",
    "EventuallyPeriodic",
    "ep_multiply",
    "ep_inverse",
    "ep_is_identity",
    "state_semantics",
    "faithful_embedding",
    "generated_group",
]
