"""
Sign vectors and the elementary abelian 2-groups they span.

A tuple of {e, π}-entries (π a fixed transposition) multiplies
componentwise like bit vectors add over GF(2), so the group generated by
the rotations of a sign vector has order 2^rank exactly.
"""

import itertools
import math
from typing import List, Sequence

from src.algebra.gf2 import gf2_rank, pack_bits, rotations
from src.algebra.permutation import Permutation
from src.errors import AlphabetMismatch
from src.models import ShapeTag, SignVector


def signature_tuple(perms: Sequence[Permutation]) -> SignVector:
    return SignVector(bits=tuple(1 if p.signature() == -1 else 0 for p in perms))


def circulant_rank(v: SignVector) -> int:
    """GF(2) rank of the cyclic rotations of ``v``."""
    if not len(v):
        return 0
    return gf2_rank(pack_bits(r) for r in rotations(v.bits))


def sign_group_order(v: SignVector) -> int:
    return 2 ** circulant_rank(v)


def shape_from_rows(rows: Sequence[Sequence[int]], length: int) -> ShapeTag:
    """Name the sign span generated by ``rows`` (bit lists of ``length`` entries)."""
    masks = [pack_bits(r) for r in rows]
    rank = gf2_rank(masks)
    if rank == 0:
        return ShapeTag.ALT_TIMES_ALT
    if rank == length:
        return ShapeTag.SYM_TIMES_SYM
    all_ones = (1 << length) - 1
    if rank == 1 and all(m in (0, all_ones) for m in masks):
        return ShapeTag.ALT_SEMIDIRECT
    return ShapeTag.GENERAL_SEMIDIRECT


def shape_tag(v: SignVector) -> ShapeTag:
    return shape_from_rows(rotations(v.bits), len(v))


def orders_tuple_primitive(perms: Sequence[Permutation]) -> bool:
    """True iff the tuple of orders is not a repetition of a strictly shorter tuple."""
    orders = [p.order() for p in perms]
    n = len(orders)
    return not any(n % d == 0 and orders == orders[:d] * (n // d) for d in range(1, n))


def union_exponent(sizes: Sequence[int]) -> int:
    """Inclusion-exclusion over nonempty subsets: Σ (-1)^(j-1) Σ gcd(n_i1, ..., n_ij)."""
    if not sizes:
        raise ValueError("union_exponent needs at least one cycle size")
    total = 0
    for j in range(1, len(sizes) + 1):
        subtotal = sum(math.gcd(*subset) for subset in itertools.combinations(sizes, j))
        total += subtotal if j % 2 else -subtotal
    return total


def union_sign_rows(components: Sequence[Sequence[Permutation]]) -> List[List[int]]:
    """Sign rows of every state of a union of cyclic components, repeated to the lcm length."""
    degrees = {p.degree for comp in components for p in comp}
    if len(degrees) != 1:
        raise AlphabetMismatch(f"components act on different alphabets: {sorted(degrees)}")
    length = math.lcm(*(len(comp) for comp in components))
    rows = []
    for comp in components:
        bits = signature_tuple(comp).bits
        repeated = [bits[i % len(bits)] for i in range(length)]
        rows.extend(rotations(repeated)[: len(bits)])
    return rows


def union_sign_rank(components: Sequence[Sequence[Permutation]]) -> int:
    """GF(2) rank of all rotations of the components' periodically repeated sign vectors."""
    return gf2_rank(pack_bits(r) for r in union_sign_rows(components))
