"""
Exact permutation arithmetic.

Points are 0-based internally and 1-based in cycle notation. Products act
left first: ``(p * q)(x) == q(p(x))``, so ``conjugate(p, r) == ~r * p * r``
relabels every cycle ``(a, b, ...)`` of ``p`` as ``(r(a), r(b), ...)``.
"""

import logging
import math
import re
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.errors import DegreeMismatch, MalformedCycle, NotConjugate, ParityUnachievable

logger = logging.getLogger(__name__)

_IDENTITY_CACHE: Dict[int, Tuple[int, ...]] = {}
_CYCLE_TEXT = re.compile(r"(\(\d+(,\d+)*\))+")


def _identity_images(degree: int) -> Tuple[int, ...]:
    images = _IDENTITY_CACHE.get(degree)
    if images is None:
        images = _IDENTITY_CACHE[degree] = tuple(range(degree))
    return images


class Permutation:
    """An immutable bijection of ``{0, ..., degree - 1}``."""

    __slots__ = ("_images",)

    def __init__(self, images: Iterable[int]):
        values = tuple(int(x) for x in images)
        if not values:
            raise MalformedCycle("a permutation needs degree at least 1")
        if sorted(values) != list(_identity_images(len(values))):
            raise MalformedCycle(f"images {values} are not a bijection of 0..{len(values) - 1}")
        self._images = values

    @classmethod
    def _wrap(cls, images: Tuple[int, ...]) -> "Permutation":
        # Trusted fast path: caller guarantees a bijection.
        perm = object.__new__(cls)
        perm._images = images
        return perm

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._wrap(_identity_images(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build from 0-based cycles. Unlisted points are fixed."""
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for i, point in enumerate(cyc):
                if point in seen or not 0 <= point < degree:
                    raise MalformedCycle(f"point {point + 1} repeated or outside 1..{degree}")
                seen.add(point)
                images[point] = cyc[(i + 1) % len(cyc)]
        return cls._wrap(tuple(images))

    @property
    def degree(self) -> int:
        return len(self._images)

    @property
    def images(self) -> Tuple[int, ...]:
        return self._images

    def __call__(self, point: int) -> int:
        return self._images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __pow__(self, exponent: int) -> "Permutation":
        return power(self, exponent)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._images == other._images

    def __hash__(self) -> int:
        return hash(self._images)

    def __reduce__(self):
        return (Permutation, (self._images,))

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"

    def __str__(self) -> str:
        return format_cycles(self)

    def is_identity(self) -> bool:
        return self._images == _identity_images(len(self._images))

    def support(self) -> List[int]:
        return [x for x, y in enumerate(self._images) if x != y]

    def cycles(self, include_fixed_points: bool = False) -> List[Tuple[int, ...]]:
        """Disjoint cycles, each starting at its smallest point, ordered by that point."""
        seen = [False] * len(self._images)
        result = []
        for start in range(len(self._images)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            nxt = self._images[start]
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = self._images[nxt]
            if len(cyc) > 1 or include_fixed_points:
                result.append(tuple(cyc))
        return result

    def cycle_type(self) -> Tuple[int, ...]:
        """Cycle lengths including fixed points, in decreasing order."""
        return tuple(sorted((len(c) for c in self.cycles(include_fixed_points=True)), reverse=True))

    def order(self) -> int:
        return order(self)

    def signature(self) -> int:
        return signature(self)


def _check_degrees(p: Permutation, q: Permutation) -> None:
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree} differ")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``."""
    _check_degrees(p, q)
    return Permutation._wrap(tuple(map(q._images.__getitem__, p._images)))


def inverse(p: Permutation) -> Permutation:
    images = [0] * p.degree
    for x, y in enumerate(p._images):
        images[y] = x
    return Permutation._wrap(tuple(images))


def order(p: Permutation) -> int:
    return math.lcm(*(len(c) for c in p.cycles(include_fixed_points=True)))


def signature(p: Permutation) -> int:
    parity = (p.degree - len(p.cycles(include_fixed_points=True))) % 2
    return -1 if parity else 1


def power(p: Permutation, exponent: int) -> Permutation:
    """``p`` to any integer power; the exponent is reduced modulo ``order(p)`` first."""
    cycles = p.cycles()
    if not cycles:
        return p
    exponent %= math.lcm(*(len(c) for c in cycles))
    if exponent == 0:
        return Permutation.identity(p.degree)
    images = list(range(p.degree))
    for cyc in cycles:
        length = len(cyc)
        shift = exponent % length
        for i, point in enumerate(cyc):
            images[point] = cyc[(i + shift) % length]
    return Permutation._wrap(tuple(images))


def conjugate(p: Permutation, r: Permutation) -> Permutation:
    """``r^-1 * p * r``."""
    _check_degrees(p, r)
    images = [0] * p.degree
    rim = r._images
    for x, y in enumerate(p._images):
        images[rim[x]] = rim[y]
    return Permutation._wrap(tuple(images))


def class_splits(p: Permutation) -> bool:
    """True iff all cycle lengths, fixed points included, are odd and pairwise distinct."""
    lengths = p.cycle_type()
    return all(n % 2 for n in lengths) and len(set(lengths)) == len(lengths)


def _odd_centralizer_element(p: Permutation) -> Optional[Permutation]:
    cycles = sorted(p.cycles(include_fixed_points=True), key=lambda c: (-len(c), c[0]))
    for cyc in cycles:
        if len(cyc) % 2 == 0:
            return Permutation.from_cycles(p.degree, [cyc])
    for first, second in zip(cycles, cycles[1:]):
        if len(first) == len(second):
            # Swapping two equal odd-length cycles pointwise commutes with p.
            return Permutation.from_cycles(p.degree, [(a, b) for a, b in zip(first, second)])
    return None


def conjugator_between(p: Permutation, q: Permutation, parity: Optional[int] = None) -> Permutation:
    """
    Return ``r`` with ``conjugate(p, r) == q``.

    Cycles are aligned by decreasing length, ties broken by smallest point.
    When ``parity`` is given the result has that signature, composing with an
    odd element of the centralizer of ``p`` if needed.
    """
    _check_degrees(p, q)
    key = lambda c: (-len(c), c[0])
    p_cycles = sorted(p.cycles(include_fixed_points=True), key=key)
    q_cycles = sorted(q.cycles(include_fixed_points=True), key=key)
    if [len(c) for c in p_cycles] != [len(c) for c in q_cycles]:
        raise NotConjugate(f"{format_cycles(p)} and {format_cycles(q)} have different cycle types")
    images = [0] * p.degree
    for pc, qc in zip(p_cycles, q_cycles):
        for a, b in zip(pc, qc):
            images[a] = b
    r = Permutation._wrap(tuple(images))
    if parity is None or signature(r) == parity:
        return r
    fix = _odd_centralizer_element(p)
    if fix is None:
        raise ParityUnachievable(
            f"every conjugator from {format_cycles(p)} to {format_cycles(q)} has signature {-parity}"
        )
    return compose(fix, r)


def random_permutation(k: int, rng: np.random.Generator) -> Permutation:
    """Uniform over all ``k!`` permutations, driven only by ``rng``."""
    return Permutation._wrap(tuple(rng.permutation(k).tolist()))


def transposition(degree: int, a: int, b: int) -> Permutation:
    return Permutation.from_cycles(degree, [(a, b)])


def parse_cycles(text: str, degree: Optional[int] = None) -> Permutation:
    """
    Parse 1-based cycle notation such as ``"(1,6,4,3)(2,5)"``.

    Whitespace is ignored. ``"e"`` and ``"()"`` denote the identity. Without
    ``degree`` the largest listed point is used.
    """
    compact = "".join(text.split())
    if compact in ("e", "()", ""):
        return Permutation.identity(degree or 1)
    if not _CYCLE_TEXT.fullmatch(compact):
        raise MalformedCycle(f"cannot read cycle notation {text!r}")
    cycles = [[int(x) for x in body.split(",")] for body in compact[1:-1].split(")(")]
    points = [x for c in cycles for x in c]
    if min(points) < 1:
        raise MalformedCycle(f"point {min(points)} is below 1 in {text!r}")
    if degree is None:
        degree = max(points)
    if max(points) > degree:
        raise MalformedCycle(f"point {max(points)} exceeds degree {degree} in {text!r}")
    if len(set(points)) != len(points):
        raise MalformedCycle(f"repeated point in {text!r}")
    return Permutation.from_cycles(degree, [[x - 1 for x in c] for c in cycles])


def format_cycles(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "e"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cycles)
