"""
Constructive witnesses inside circularly generated groups.

For a tuple (σ_0, ..., σ_{n-1}) the group ⟨·⟩c is generated by all rotations
of the tuple acting blockwise. A prime-cycle witness is a member
(e, ..., e, π) with π a single cycle of prime length; every witness returned
here has passed a membership test on the stabilizer chain.
"""

import logging
import math
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from sympy import factorint

from src.algebra.groups import (
    StabilizerChain,
    circular_group,
    contains,
    embed_tuple,
    natural_group,
    projection_kernel,
    random_element,
    recognize_sym_alt,
    split_tuple,
)
from src.algebra.permutation import (
    Permutation,
    compose,
    conjugate,
    conjugator_between,
    inverse,
    power,
)
from src.config import get_settings
from src.errors import (
    CertificateRejected,
    DegreeMismatch,
    EdgeCase,
    HypothesisFailed,
    NotPrimitiveTuple,
    SameOrders,
    WitnessNotFound,
)
from src.models import SymAltKind
from src.theory.signatures import orders_tuple_primitive

logger = logging.getLogger(__name__)

Coordinates = List[Permutation]


class PrimeCycleWitness(BaseModel):
    """(e, ..., π at ``coordinate``, ..., e) with π a cycle of prime length."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    coordinate: int = Field(..., ge=0, description="Coordinate carrying the cycle")
    prime: int = Field(..., ge=2, description="Length of the cycle")
    cycle: Permutation = Field(..., description="The cycle, a permutation of the letters")
    n: int = Field(..., ge=1, description="Tuple length")

    def coordinates(self) -> Coordinates:
        ident = Permutation.identity(self.cycle.degree)
        return [self.cycle if c == self.coordinate else ident for c in range(self.n)]

    def element(self) -> Permutation:
        return embed_tuple(self.coordinates())


class CoprimeCertificate(BaseModel):
    """``rotation`` of (σ, τ) raised to ``exponent``, with the resulting pair."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    rotation: int = Field(..., description="0 for (σ, τ), 1 for (τ, σ)")
    exponent: int
    element: Tuple[Permutation, Permutation]


def _primes(n: int) -> List[int]:
    return sorted(factorint(n)) if n > 1 else []


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _tuple_power(coords: Sequence[Permutation], exponent: int) -> Coordinates:
    return [power(c, exponent) for c in coords]


def _rotate(coords: Sequence[Permutation], shift: int) -> Coordinates:
    n = len(coords)
    return [coords[(c + shift) % n] for c in range(n)]


def _unique_prime_powers(perms: Sequence[Permutation], coordinate: int) -> Iterator[Tuple[int, Permutation]]:
    """
    Primes p whose largest p-valuation among the orders sits at ``coordinate``
    alone; the tuple power (σ_i)^(lcm/p) is then trivial except for an element
    of order p there.
    """
    orders = [p.order() for p in perms]
    total = math.lcm(*orders)
    for p in _primes(total):
        v = [_valuation(o, p) for o in orders]
        others = v[:coordinate] + v[coordinate + 1:]
        if v[coordinate] > max(others, default=-1):
            yield p, power(perms[coordinate], total // p)


def isolate_prime_cycle(y: Permutation, p: int, parity: Optional[int]) -> Tuple[int, Permutation]:
    """
    Turn ``y`` (a product of disjoint p-cycles) into a single prime cycle using
    only products of ``y`` with conjugates ``y^ρ``. ``parity=+1`` restricts ρ
    to even permutations.

    Odd p: y · y^ρ with y^ρ = π_1 π_2^-1 ... π_l^-1 gives π_1^2.
    p = 2 with a fixed point c: (a b)(...) · (a c)(...) gives the 3-cycle (a, b, c).
    p = 2 without fixed points: one product leaves (a_1 a_2)(b_1 b_2) first.
    """
    k = y.degree
    cycles = y.cycles()
    if len(cycles) == 1:
        return p, y
    if p != 2:
        target = Permutation.from_cycles(k, [cycles[0]] + [tuple(reversed(c)) for c in cycles[1:]])
        rho = conjugator_between(y, target, parity)
        return p, compose(y, conjugate(y, rho))
    fixed = [x for x in range(k) if y.images[x] == x]
    if not fixed:
        if k <= 4:
            raise EdgeCase(f"{y} moves all {k} points; no room for a 3-cycle")
        (a1, b1), (a2, b2) = cycles[0], cycles[1]
        target = Permutation.from_cycles(k, [(a1, b2), (b1, a2)] + cycles[2:])
        y = compose(y, conjugate(y, conjugator_between(y, target, parity)))
        cycles = y.cycles()
        fixed = [x for x in range(k) if y.images[x] == x]
    (a, b), rest = cycles[0], cycles[1:]
    target = Permutation.from_cycles(k, [(a, fixed[0])] + rest)
    return 3, compose(y, conjugate(y, conjugator_between(y, target, parity)))


def _verified(pi: Permutation, prime: int, n: int, chain: StabilizerChain) -> PrimeCycleWitness:
    witness = PrimeCycleWitness(coordinate=n - 1, prime=prime, cycle=pi, n=n)
    if len(pi.cycles()) != 1 or len(pi.cycles()[0]) != prime:
        raise CertificateRejected(f"{pi} is not a single {prime}-cycle")
    if not contains(chain, witness.element()):
        raise CertificateRejected(f"witness {pi} at coordinate {n - 1} failed membership")
    logger.debug(f"Verified {prime}-cycle witness {pi}")
    return witness


def _parity_for(perms: Sequence[Permutation]) -> Optional[int]:
    kind = recognize_sym_alt(natural_group(perms[0].degree, perms))
    if kind == SymAltKind.OTHER:
        raise HypothesisFailed("the permutations generate neither S_k nor A_k")
    return 1 if kind == SymAltKind.ALTERNATING else None


def _bezout(a: int, b: int) -> Tuple[int, int]:
    """(u, v) with u*a + v*b = gcd(a, b)."""
    old_r, r, old_u, u, old_v, v = a, b, 1, 0, 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    return old_u, old_v


def coprime_split(
    sigma: Permutation, tau: Permutation, chain: Optional[StabilizerChain] = None
) -> Optional[List[CoprimeCertificate]]:
    """
    When o(σ) and o(τ) are coprime, the Bézout powers of (σ, τ) and (τ, σ)
    separate the coordinates: (e, τ^o(σ)), (e, τ), (σ, e), (τ, e), (e, σ).
    Returns None otherwise.
    """
    if sigma.degree != tau.degree:
        raise DegreeMismatch("σ and τ must share a degree")
    o_sigma, o_tau = sigma.order(), tau.order()
    if math.gcd(o_sigma, o_tau) != 1:
        return None
    chain = chain or circular_group([sigma, tau]).chain()
    u, v = _bezout(o_sigma, o_tau)
    pairs = ((sigma, tau), (tau, sigma))
    plan = [(0, o_sigma), (0, u * o_sigma), (0, v * o_tau), (1, u * o_sigma), (1, v * o_tau)]
    certificates = []
    for rotation, exponent in plan:
        element = _tuple_power(pairs[rotation], exponent)
        if not contains(chain, embed_tuple(element)):
            raise CertificateRejected(f"Bézout power {exponent} of rotation {rotation} failed membership")
        certificates.append(CoprimeCertificate(rotation=rotation, exponent=exponent, element=tuple(element)))
    return certificates


def witness_prime_cycle_2(
    sigma: Permutation, tau: Permutation, chain: Optional[StabilizerChain] = None
) -> PrimeCycleWitness:
    """
    (e, π) ∈ ⟨(σ, τ)⟩c with π a cycle of prime length at most k - 3.

    Takes the coordinate of τ first, then σ's (mapped back by the coordinate
    swap); within each, primes in increasing order. Raises EdgeCase when no
    prime leads to a small enough cycle.
    """
    if sigma.degree != tau.degree:
        raise DegreeMismatch("σ and τ must share a degree")
    if sigma.order() == tau.order():
        raise SameOrders(f"both permutations have order {sigma.order()}")
    k = sigma.degree
    parity = _parity_for([sigma, tau])
    chain = chain or circular_group([sigma, tau]).chain()
    for coordinate in (1, 0):
        for p, y in _unique_prime_powers([sigma, tau], coordinate):
            try:
                prime, pi = isolate_prime_cycle(y, p, parity)
            except EdgeCase:
                continue
            if prime > k - 3:
                logger.debug(f"Skipping {prime}-cycle: too long for degree {k}")
                continue
            return _verified(pi, prime, 2, chain)
    raise EdgeCase(f"no prime-cycle construction for orders ({sigma.order()}, {tau.order()}) at k = {k}")


def prime_cycle_power(x: Permutation) -> Optional[Tuple[int, Permutation]]:
    """
    A power of ``x`` that is a single prime cycle: needs a cycle of prime
    length p such that no other cycle length is divisible by p.
    """
    lengths = [len(c) for c in x.cycles()]
    for p in sorted(set(lengths)):
        if factorint(p) != {p: 1}:
            continue
        if sum(1 for n in lengths if n % p == 0) != 1:
            continue
        rest = list(lengths)
        rest.remove(p)
        return p, power(x, math.lcm(*rest) if rest else 1)
    return None


def witness_from_kernel(
    perms: Sequence[Permutation], chain: Optional[StabilizerChain] = None, attempts: Optional[int] = None
) -> PrimeCycleWitness:
    """Prime cycle taken from the kernel of the projection onto the first n - 1 coordinates."""
    n, k = len(perms), perms[0].degree
    group = circular_group(perms)
    if chain is not None:
        group._chain = chain
    chain = group.chain()
    kernel = projection_kernel(group, n - 1, k)
    if kernel.order() == 1:
        raise WitnessNotFound("the projection kernel is trivial")
    rng = np.random.default_rng(get_settings().schreier_sims.random_seed)
    attempts = attempts or get_settings().witness_kernel_attempts
    kernel_chain = kernel.chain()
    candidates = list(kernel.generators)
    for tries in range(len(candidates) + attempts):
        h = candidates[tries] if tries < len(candidates) else random_element(kernel_chain, rng)
        found = prime_cycle_power(split_tuple(h, k)[n - 1])
        if found is not None:
            return _verified(found[1], found[0], n, chain)
    raise WitnessNotFound(f"no prime cycle among {len(candidates) + attempts} kernel elements")


def _reduce_to_prime(coords: Sequence[Permutation]) -> Optional[Tuple[int, Coordinates]]:
    """Power a tuple down so that its nontrivial coordinates all have one prime order."""
    orders = [c.order() for c in coords]
    total = math.lcm(*orders)
    if total == 1:
        return None
    best = None
    for p in _primes(total):
        v = [_valuation(o, p) for o in orders]
        spread = v.count(max(v))
        if best is None or spread < best[0]:
            best = (spread, p)
    p = best[1]
    return p, _tuple_power(coords, total // p)


def witness_prime_cycle_n(
    perms: Sequence[Permutation], chain: Optional[StabilizerChain] = None
) -> PrimeCycleWitness:
    """
    (e, ..., e, π) ∈ ⟨(σ_i)_i⟩c with π a cycle of prime length.

    First looks for a prime whose largest valuation sits at one coordinate.
    Otherwise reduces the number of nontrivial coordinates with commutators
    of rotated conjugates, within the configured step budget, and finally
    falls back to the projection kernel.
    """
    n = len(perms)
    if n == 2:
        try:
            return witness_prime_cycle_2(perms[0], perms[1], chain)
        except EdgeCase:
            logger.info("Edge case for n = 2, using the projection kernel")
            return witness_from_kernel(perms, chain)
    if not orders_tuple_primitive(perms):
        raise NotPrimitiveTuple(f"orders {[p.order() for p in perms]} repeat a shorter tuple")
    k = perms[0].degree
    if k < 7:
        raise HypothesisFailed(f"alphabet size {k} is below 7")
    parity = _parity_for(perms)
    group = circular_group(perms)
    if chain is not None:
        group._chain = chain
    chain = group.chain()

    candidates = sorted(
        (p, c, y) for c in range(n) for p, y in _unique_prime_powers(perms, c)
    )
    for p, c, y in candidates:
        prime, pi = isolate_prime_cycle(y, p, parity)
        return _verified(pi, prime, n, chain)

    rng = np.random.default_rng(get_settings().schreier_sims.random_seed)
    budget = get_settings().witness_step_budget
    reduced = _reduce_to_prime(list(perms))
    current = reduced[1] if reduced else list(perms)
    for step in range(budget):
        support = [c for c, x in enumerate(current) if not x.is_identity()]
        if len(support) == 1:
            y = current[support[0]]
            prime, pi = isolate_prime_cycle(y, y.order(), parity)
            logger.debug(f"Support reduced to one coordinate after {step} steps")
            return _verified(pi, prime, n, chain)
        if not support:
            current = split_tuple(random_element(chain, rng), k)
            reduced = _reduce_to_prime(current)
            if reduced:
                current = reduced[1]
            continue
        present = set(support)
        shift = next(
            (s for s in range(1, n) if 0 < len(present & {(c - s) % n for c in present}) < len(present)),
            None,
        )
        g = split_tuple(random_element(chain, rng), k)
        other = [conjugate(x, gc) for x, gc in zip(_rotate(current, shift or 1), g)]
        if shift is None:
            candidate = [compose(a, b) for a, b in zip(current, other)]
        else:
            candidate = [
                compose(compose(inverse(a), inverse(b)), compose(a, b)) for a, b in zip(current, other)
            ]
        reduced = _reduce_to_prime(candidate)
        if reduced is not None:
            current = reduced[1]
    logger.info(f"Support reduction exhausted {budget} steps, using the projection kernel")
    return witness_from_kernel(perms, chain)
