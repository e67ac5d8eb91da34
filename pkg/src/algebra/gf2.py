"""Bit-vector linear algebra over GF(2)."""

from typing import Iterable, List, Sequence


def pack_bits(bits: Sequence[int]) -> int:
    """Pack ``bits`` (index 0 first) into an integer mask."""
    mask = 0
    for i, bit in enumerate(bits):
        if bit:
            mask |= 1 << i
    return mask


def rotations(bits: Sequence[int]) -> List[List[int]]:
    """All cyclic rotations, rotation ``s`` starting at index ``s``."""
    n = len(bits)
    return [[bits[(s + i) % n] for i in range(n)] for s in range(n)]


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank of the integer bit masks ``rows`` as vectors over GF(2)."""
    # Kept in decreasing order so each row's leading bit is cleared exactly once.
    basis: List[int] = []
    for row in rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis.append(row)
            basis.sort(reverse=True)
    return len(basis)
