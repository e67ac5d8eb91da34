"""Shared fixtures: the reference automata and a clean settings state per test."""

from pathlib import Path

import pytest

from src.algebra.permutation import Permutation, parse_cycles
from src.automata.formats import load_automaton
from src.automata.machine import MealyAutomaton
from src.config import configure

DATA_DIR = Path(__file__).resolve().parent.parent / "data" / "automata"


def perm(text: str, k: int) -> Permutation:
    """1-based cycle notation at degree ``k``."""
    return parse_cycles(text, k)


@pytest.fixture(autouse=True)
def default_settings():
    """Every test starts from the default settings."""
    configure(None)
    yield
    configure(None)


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def cyclic2() -> MealyAutomaton:
    return load_automaton(DATA_DIR / "cyclic2.mealy")


@pytest.fixture
def cyclic3() -> MealyAutomaton:
    return load_automaton(DATA_DIR / "cyclic3.mealy")


@pytest.fixture
def union_automaton_fixture() -> MealyAutomaton:
    return load_automaton(DATA_DIR / "union_cyclic2_cyclic3.mealy")


@pytest.fixture
def mealy1() -> MealyAutomaton:
    return load_automaton(DATA_DIR / "klein_path.mealy")


@pytest.fixture
def mealy2() -> MealyAutomaton:
    return load_automaton(DATA_DIR / "letter_dependent.mealy")


@pytest.fixture
def cyclic2_perms():
    return [perm("(1,6,4,3)(2,5)", 6), perm("(2,3)(4,5,6)", 6)]


@pytest.fixture
def cyclic3_perms():
    return [perm("(1,6,2,5,4,3)", 6), perm("(1,3,2,6,5,4)", 6), perm("(1,4)(2,5,3,6)", 6)]
