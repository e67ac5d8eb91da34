"""
Eventually periodic sequences of permutations.

A state of a letter-independent automaton acts on a word by applying one
letter permutation per depth; the sequence is a preperiod followed by a
repeated period. Values are kept canonical so equality is structural.
"""

import math
from typing import Iterable, List, Sequence, Tuple

from src.algebra.permutation import Permutation, compose, format_cycles, inverse
from src.errors import DegreeMismatch, MalformedCycle


def _primitive_period(period: Tuple[Permutation, ...]) -> Tuple[Permutation, ...]:
    n = len(period)
    for d in range(1, n):
        if n % d == 0 and period == period[:d] * (n // d):
            return period[:d]
    return period


class EventuallyPeriodic:
    """``preperiod`` followed by ``period`` repeated forever, in canonical form."""

    __slots__ = ("degree", "preperiod", "period")

    def __init__(self, preperiod: Iterable[Permutation], period: Iterable[Permutation]):
        pre = list(preperiod)
        per = _primitive_period(tuple(period))
        if not per:
            raise MalformedCycle("the period must be nonempty")
        degree = per[0].degree
        if any(p.degree != degree for p in pre + list(per)):
            raise DegreeMismatch("all entries must share one degree")
        while pre and pre[-1] == per[-1]:
            pre.pop()
            per = (per[-1],) + per[:-1]
        self.degree = degree
        self.preperiod: Tuple[Permutation, ...] = tuple(pre)
        self.period: Tuple[Permutation, ...] = per

    @classmethod
    def identity(cls, degree: int) -> "EventuallyPeriodic":
        return cls([], [Permutation.identity(degree)])

    def at(self, depth: int) -> Permutation:
        """The permutation applied at ``depth`` (0-based)."""
        if depth < len(self.preperiod):
            return self.preperiod[depth]
        return self.period[(depth - len(self.preperiod)) % len(self.period)]

    def prefix(self, length: int) -> List[Permutation]:
        return [self.at(d) for d in range(length)]

    def __mul__(self, other: "EventuallyPeriodic") -> "EventuallyPeriodic":
        return ep_multiply(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EventuallyPeriodic):
            return NotImplemented
        return self.preperiod == other.preperiod and self.period == other.period

    def __hash__(self) -> int:
        return hash((self.preperiod, self.period))

    def __repr__(self) -> str:
        pre = ", ".join(format_cycles(p) for p in self.preperiod)
        per = ", ".join(format_cycles(p) for p in self.period)
        return f"EventuallyPeriodic([{pre}], [{per}])"


def ep_multiply(a: EventuallyPeriodic, b: EventuallyPeriodic) -> EventuallyPeriodic:
    """Componentwise product on the common shape (max preperiod, lcm of periods)."""
    if a.degree != b.degree:
        raise DegreeMismatch(f"degrees {a.degree} and {b.degree} differ")
    pre = max(len(a.preperiod), len(b.preperiod))
    per = math.lcm(len(a.period), len(b.period))
    entries = [compose(a.at(d), b.at(d)) for d in range(pre + per)]
    return EventuallyPeriodic(entries[:pre], entries[pre:])


def ep_inverse(a: EventuallyPeriodic) -> EventuallyPeriodic:
    return EventuallyPeriodic([inverse(p) for p in a.preperiod], [inverse(p) for p in a.period])


def ep_is_identity(a: EventuallyPeriodic) -> bool:
    return not a.preperiod and len(a.period) == 1 and a.period[0].is_identity()


def ep_product(elements: Sequence[EventuallyPeriodic], degree: int) -> EventuallyPeriodic:
    result = EventuallyPeriodic.identity(degree)
    for element in elements:
        result = ep_multiply(result, element)
    return result
