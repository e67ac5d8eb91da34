"""
Exception hierarchy for Mealy Cycle Groups.

Every error carries the process exit code the CLI reports for it:
2 for usage and parse problems, 3 for violated preconditions and
4 for internal verification failures.
"""

from typing import Optional


class MealyGroupError(Exception):
    """Base class for all library errors."""
    exit_code: int = 3


# Usage / parse (exit 2)

class UsageError(MealyGroupError):
    """Malformed user input."""
    exit_code = 2


class ParseError(UsageError):
    """An automaton file could not be parsed."""

    def __init__(self, line: Optional[int], reason: str):
        self.line = line
        self.reason = reason
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{reason}")


class IncompleteTable(ParseError):
    """A transition (state, letter) has no entry."""

    def __init__(self, state: int, letter: int):
        self.state = state
        self.letter = letter
        super().__init__(None, f"missing transition for state {state}, letter {letter}")


class MalformedCycle(UsageError):
    """Cycle notation with a repeated point or a point out of range."""


# Preconditions (exit 3)

class PreconditionError(MealyGroupError, ValueError):
    """An operation was called outside its domain."""
    exit_code = 3


class DegreeMismatch(PreconditionError):
    pass


class NotConjugate(PreconditionError):
    pass


class ParityUnachievable(PreconditionError):
    """Every conjugator between the two permutations has the other signature."""


class NotTransitive(PreconditionError):
    pass


class BadBlockStructure(PreconditionError):
    pass


class LetterOutOfRange(PreconditionError):
    pass


class StateOutOfRange(PreconditionError):
    pass


class NotLetterIndependent(PreconditionError):
    pass


class NotInvertible(PreconditionError):
    pass


class SameOrders(PreconditionError):
    pass


class EdgeCase(PreconditionError):
    """No prime small enough for the direct construction; use the kernel route."""


class HypothesisFailed(PreconditionError):
    pass


class NotPrimitiveTuple(PreconditionError):
    pass


class AlphabetMismatch(PreconditionError):
    pass


class SizeGuard(PreconditionError):
    pass


# Verification (exit 4)

class VerificationError(MealyGroupError, RuntimeError):
    """A computed certificate failed its own check. Signals a defect."""
    exit_code = 4


class NonConvergence(VerificationError):
    pass


class WitnessNotFound(VerificationError):
    pass


class CertificateRejected(VerificationError):
    pass
