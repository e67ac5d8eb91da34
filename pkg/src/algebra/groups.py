"""
Finitely generated permutation groups.

Stabilizer chains are built by Schreier-Sims. When a proven upper bound on
the order is known, a seeded product-replacement phase runs first and stops
as soon as the chain reaches the bound; the deterministic completion then
runs only if the bound was not reached. Both routes give exact results.
"""

import logging
import math
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.algebra.blocks import UnionFind
from src.algebra.gf2 import gf2_rank, pack_bits
from src.algebra.permutation import Permutation, compose, conjugate, inverse
from src.config import SchreierSimsConfig, get_settings
from src.errors import BadBlockStructure, CertificateRejected, DegreeMismatch, NonConvergence, NotTransitive
from src.models import BlockSystem, SymAltKind

logger = logging.getLogger(__name__)


def alternating_order(k: int) -> int:
    """|A_k|, taking A_1 = A_0 = 1."""
    return math.factorial(k) // 2 if k >= 2 else 1


class PermGroup:
    """A group given by generators on ``degree`` points."""

    def __init__(self, degree: int, generators: Iterable[Permutation] = (), order_bound: Optional[int] = None):
        self.degree = degree
        self.generators: List[Permutation] = list(generators)
        for g in self.generators:
            if g.degree != degree:
                raise DegreeMismatch(f"generator of degree {g.degree} in a group of degree {degree}")
        self.order_bound = order_bound
        self._chain: Optional["StabilizerChain"] = None

    def chain(self) -> "StabilizerChain":
        if self._chain is None:
            self._chain = build_chain(self)
        return self._chain

    def order(self) -> int:
        return self.chain().order

    def __contains__(self, p: Permutation) -> bool:
        return contains(self.chain(), p)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, generators={len(self.generators)})"


class StabilizerChain:
    """
    Base, per-level strong generators and transversals.

    ``level_generators[i]`` generates the pointwise stabilizer of
    ``base[:i]``; ``transversals[i]`` maps each point of the basic orbit of
    ``base[i]`` to an element sending ``base[i]`` there.
    """

    def __init__(self, degree: int):
        self.degree = degree
        self.base: List[int] = []
        self.level_generators: List[List[Permutation]] = []
        self.transversals: List[Dict[int, Permutation]] = []
        self._inverse_transversals: List[Dict[int, Permutation]] = []
        self.certified_by_bound = False

    @property
    def order(self) -> int:
        return math.prod(self.basic_orbit_lengths())

    @property
    def strong_generators(self) -> List[Permutation]:
        seen = set()
        result = []
        for level in self.level_generators:
            for g in level:
                if g not in seen:
                    seen.add(g)
                    result.append(g)
        return result

    def basic_orbit_lengths(self) -> List[int]:
        return [len(t) for t in self.transversals]

    def sift(self, g: Permutation, start: int = 0) -> Tuple[Permutation, int]:
        """Strip ``g`` through levels ``start..``; returns the residue and the level where it stopped."""
        images = g.images
        for level in range(start, len(self.base)):
            beta = images[self.base[level]]
            inv = self._inverse_transversals[level].get(beta)
            if inv is None:
                return Permutation._wrap(images), level
            images = tuple(map(inv.images.__getitem__, images))
        return Permutation._wrap(images), len(self.base)

    def _append_base_point(self, point: int) -> None:
        ident = Permutation.identity(self.degree)
        self.base.append(point)
        self.level_generators.append([])
        self.transversals.append({point: ident})
        self._inverse_transversals.append({point: ident})

    def _extend_orbit(self, level: int, new_generators: Sequence[Permutation]) -> None:
        trans = self.transversals[level]
        inv = self._inverse_transversals[level]
        queue: List[int] = []

        def visit(point: int, rep: Permutation, s: Permutation) -> None:
            image = s.images[point]
            if image not in trans:
                new = Permutation._wrap(tuple(map(s.images.__getitem__, rep.images)))
                trans[image] = new
                inv[image] = inverse(new)
                queue.append(image)

        for point in list(trans):
            for s in new_generators:
                visit(point, trans[point], s)
        gens = self.level_generators[level]
        i = 0
        while i < len(queue):
            point = queue[i]
            i += 1
            for s in gens:
                visit(point, trans[point], s)

    def _add_generator(self, h: Permutation, first: int, last: int) -> None:
        """Add ``h`` to levels ``first..last``; ``last == len(base)`` appends a base point."""
        if last == len(self.base):
            self._append_base_point(h.support()[0])
        for level in range(first, last + 1):
            self.level_generators[level].append(h)
            self._extend_orbit(level, [h])

    def _random_phase(self, generators: List[Permutation], bound: int, cfg: SchreierSimsConfig) -> None:
        rng = np.random.default_rng(cfg.random_seed)
        pool = _ProductReplacement(generators, rng, cfg.product_replacement_size, cfg.warmup_rounds)
        streak = 0
        while self.order < bound and streak < cfg.identity_streak:
            h, level = self.sift(pool.next())
            if h.is_identity():
                streak += 1
                continue
            streak = 0
            self._add_generator(h, 0, level)
        if self.order > bound:
            raise CertificateRejected(f"order bound {bound} is below a constructed lower bound {self.order}")
        self.certified_by_bound = self.order == bound

    def _complete(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            restarted = False
            trans = self.transversals[i]
            inv = self._inverse_transversals[i]
            for point in list(trans):
                rep = trans[point]
                for s in list(self.level_generators[i]):
                    image = s.images[point]
                    left = tuple(map(s.images.__getitem__, rep.images))
                    if left == trans[image].images:
                        continue
                    schreier = Permutation._wrap(tuple(map(inv[image].images.__getitem__, left)))
                    h, j = self.sift(schreier, i + 1)
                    if h.is_identity():
                        continue
                    self._add_generator(h, i + 1, j)
                    i = j
                    restarted = True
                    break
                if restarted:
                    break
            if not restarted:
                i -= 1


class _ProductReplacement:
    """Seeded product replacement random element generator."""

    def __init__(self, generators: List[Permutation], rng: np.random.Generator, size: int, warmup: int):
        self.rng = rng
        size = max(size, len(generators), 2)
        self.slots = [generators[i % len(generators)] for i in range(size)]
        self.accumulator = Permutation.identity(generators[0].degree)
        for _ in range(warmup):
            self.next()

    def next(self) -> Permutation:
        n = len(self.slots)
        s = int(self.rng.integers(n))
        t = int(self.rng.integers(n - 1))
        if t >= s:
            t += 1
        other = self.slots[t] if self.rng.integers(2) else inverse(self.slots[t])
        if self.rng.integers(2):
            self.slots[s] = compose(self.slots[s], other)
        else:
            self.slots[s] = compose(other, self.slots[s])
        self.accumulator = compose(self.accumulator, self.slots[s])
        return self.accumulator


def build_chain(
    group: PermGroup,
    base_hint: Optional[Sequence[int]] = None,
    order_bound: Optional[int] = None,
) -> StabilizerChain:
    """
    Stabilizer chain of ``group``. The base starts with ``base_hint`` in order.

    ``order_bound`` (default ``group.order_bound``) must be a proven upper
    bound on the order; it only shortens the computation.
    """
    chain = StabilizerChain(group.degree)
    for point in base_hint or ():
        if not 0 <= point < group.degree:
            raise BadBlockStructure(f"base point {point} outside 0..{group.degree - 1}")
        if point not in chain.base:
            chain._append_base_point(point)

    generators = [g for g in dict.fromkeys(group.generators) if not g.is_identity()]
    for g in generators:
        level = next((i for i, b in enumerate(chain.base) if g.images[b] != b), None)
        if level is None:
            chain._append_base_point(g.support()[0])
            level = len(chain.base) - 1
        for i in range(level + 1):
            chain.level_generators[i].append(g)
    for i in range(len(chain.base)):
        chain._extend_orbit(i, chain.level_generators[i])

    bound = order_bound if order_bound is not None else group.order_bound
    if bound is not None and generators:
        chain._random_phase(generators, bound, get_settings().schreier_sims)
    if not chain.certified_by_bound:
        chain._complete()
    logger.debug(
        f"Chain on {group.degree} points: order {chain.order}, base length {len(chain.base)}, "
        f"certified by bound: {chain.certified_by_bound}"
    )
    return chain


def group_order(group: PermGroup) -> int:
    return group.order()


def contains(chain: StabilizerChain, p: Permutation) -> bool:
    """Membership by sifting."""
    if p.degree != chain.degree:
        raise DegreeMismatch(f"permutation of degree {p.degree} tested against a chain of degree {chain.degree}")
    residue, level = chain.sift(p)
    return level == len(chain.base) and residue.is_identity()


def random_element(chain: StabilizerChain, rng: np.random.Generator) -> Permutation:
    """Uniformly random group element: a product of random coset representatives."""
    images = Permutation.identity(chain.degree).images
    for trans in reversed(chain.transversals):
        points = list(trans)
        rep = trans[points[int(rng.integers(len(points)))]]
        images = tuple(map(rep.images.__getitem__, images))
    return Permutation._wrap(images)


def orbit(group: PermGroup, point: int) -> List[int]:
    """Sorted orbit of ``point`` under the generators."""
    seen = {point}
    queue = [point]
    while queue:
        x = queue.pop()
        for g in group.generators:
            y = g.images[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


def orbits(group: PermGroup) -> List[List[int]]:
    uf = UnionFind(range(group.degree))
    for g in group.generators:
        for x, y in enumerate(g.images):
            uf.union(x, y)
    return uf.classes()


def is_transitive(group: PermGroup) -> bool:
    return len(orbit(group, 0)) == group.degree


def minimal_block_system(group: PermGroup, a: int, b: int) -> BlockSystem:
    """Finest block system in which ``a`` and ``b`` share a block."""
    uf = UnionFind(range(group.degree))
    uf.union(a, b)
    pending = [(a, b)]
    while pending:
        x, y = pending.pop()
        for g in group.generators:
            gx, gy = g.images[x], g.images[y]
            if uf.union(gx, gy):
                pending.append((gx, gy))
    block_of = [0] * group.degree
    classes = uf.classes()
    for block_id, members in enumerate(classes):
        for point in members:
            block_of[point] = block_id
    return BlockSystem(block_of=block_of, block_count=len(classes))


def find_block_system(group: PermGroup) -> Optional[BlockSystem]:
    """First nontrivial block system among the minimal ones seeded by (0, x), else None."""
    if not is_transitive(group):
        raise NotTransitive(f"{group!r} has orbits {orbits(group)}")
    for x in range(1, group.degree):
        blocks = minimal_block_system(group, 0, x)
        if blocks.block_count > 1:
            return blocks
    return None


def is_primitive(group: PermGroup) -> bool:
    return find_block_system(group) is None


def normal_closure(ambient: PermGroup, seed: Permutation, max_rounds: Optional[int] = None) -> PermGroup:
    """Smallest subgroup containing ``seed`` and normalized by the ambient generators."""
    if seed.degree != ambient.degree:
        raise DegreeMismatch(f"seed of degree {seed.degree} in an ambient group of degree {ambient.degree}")
    if seed.is_identity():
        return PermGroup(ambient.degree, [], order_bound=1)
    max_rounds = max_rounds or get_settings().normal_closure_max_rounds
    bound = ambient.order()
    closure = PermGroup(ambient.degree, [seed], order_bound=bound)
    pending = [seed]
    for round_number in range(max_rounds):
        chain = closure.chain()
        fresh: List[Permutation] = []
        for g in pending:
            for a in ambient.generators:
                c = conjugate(g, a)
                if c not in fresh and not contains(chain, c):
                    fresh.append(c)
        if not fresh:
            logger.debug(f"Normal closure stable after {round_number} rounds, order {chain.order}")
            return closure
        closure = PermGroup(ambient.degree, closure.generators + fresh, order_bound=bound)
        pending = fresh
    raise NonConvergence(f"normal closure not stable after {max_rounds} rounds")


def recognize_sym_alt(group: PermGroup, k: Optional[int] = None) -> SymAltKind:
    k = group.degree if k is None else k
    order = group.order()
    if order == math.factorial(k):
        return SymAltKind.SYMMETRIC
    if order == alternating_order(k) and all(g.signature() == 1 for g in group.generators):
        return SymAltKind.ALTERNATING
    return SymAltKind.OTHER


def natural_group(k: int, generators: Iterable[Permutation]) -> PermGroup:
    """Group on ``k`` points bounded by S_k, or by A_k when every generator is even."""
    generators = list(generators)
    odd = any(g.signature() == -1 for g in generators)
    return PermGroup(k, generators, order_bound=math.factorial(k) if odd else alternating_order(k))


def symmetric_group(k: int) -> PermGroup:
    gens = []
    if k >= 2:
        gens = [Permutation.from_cycles(k, [(0, 1)]), Permutation.from_cycles(k, [tuple(range(k))])]
    return PermGroup(k, gens, order_bound=math.factorial(k))


def alternating_group(k: int) -> PermGroup:
    gens = []
    if k >= 3:
        long_cycle = tuple(range(k)) if k % 2 else tuple(range(1, k))
        gens = [Permutation.from_cycles(k, [(0, 1, 2)]), Permutation.from_cycles(k, [long_cycle])]
    return PermGroup(k, gens, order_bound=alternating_order(k))


def embed_tuple(perms: Sequence[Permutation]) -> Permutation:
    """The permutation acting as ``perms[j]`` on block ``j`` of ``len(perms)`` blocks."""
    k = perms[0].degree
    return Permutation._wrap(tuple(j * k + x for j, p in enumerate(perms) for x in p.images))


def split_tuple(p: Permutation, k: int) -> List[Permutation]:
    """Inverse of ``embed_tuple`` for a blockwise permutation."""
    images = p.images
    return [Permutation._wrap(tuple(y - j * k for y in images[j * k:(j + 1) * k])) for j in range(p.degree // k)]


def tuple_order_bound(tuples: Sequence[Sequence[Permutation]], k: int) -> int:
    """
    Upper bound ``|H ∩ A_k|^m * 2^r`` on the group generated by ``tuples``.

    H is generated by every coordinate and r is the GF(2) rank of the
    generators' sign rows. The bound is the order of a group containing the
    generated one, so it is also a multiple of its order.
    """
    if not tuples:
        return 1
    m = len(tuples[0])
    coordinates = natural_group(k, (p for t in tuples for p in t))
    h = coordinates.order()
    if any(g.signature() == -1 for g in coordinates.generators):
        h //= 2
    rank = gf2_rank(pack_bits([1 if p.signature() == -1 else 0 for p in t]) for t in tuples)
    return h ** m * 2 ** rank


def circular_group(perms: Sequence[Permutation]) -> PermGroup:
    """The group generated by all cyclic rotations of ``perms``, acting blockwise."""
    n = len(perms)
    rotations = [list(perms[s:]) + list(perms[:s]) for s in range(n)]
    k = perms[0].degree
    return PermGroup(n * k, [embed_tuple(r) for r in rotations], order_bound=tuple_order_bound(rotations, k))


def projection_kernel(group: PermGroup, m: int, block_size: int) -> PermGroup:
    """
    Subgroup acting trivially on the first ``m`` of the ``n`` blocks.

    Built from a chain whose base lists the points of those blocks first; the
    returned generators are the strong generators fixing all of them.
    """
    if block_size < 1 or group.degree % block_size:
        raise BadBlockStructure(f"degree {group.degree} is not a multiple of block size {block_size}")
    n = group.degree // block_size
    if not 1 <= m < n:
        raise BadBlockStructure(f"block prefix {m} must satisfy 1 <= m < {n}")
    prefix = list(range(m * block_size))
    full_order = group.order()
    chain = build_chain(group, base_hint=prefix, order_bound=full_order)
    kernel_gens = [g for g in chain.strong_generators if all(g.images[x] == x for x in prefix)]
    kernel_order = full_order // math.prod(chain.basic_orbit_lengths()[: len(prefix)])
    logger.debug(f"Kernel of projection to {m} blocks: order {kernel_order}, {len(kernel_gens)} generators")
    return PermGroup(group.degree, kernel_gens, order_bound=kernel_order)
