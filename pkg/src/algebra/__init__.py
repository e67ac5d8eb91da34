"""Permutations, GF(2) helpers and permutation groups."""

from .groups import (
    PermGroup,
    StabilizerChain,
    build_chain,
    contains,
    group_order,
    is_primitive,
    is_transitive,
    normal_closure,
    orbit,
    projection_kernel,
    recognize_sym_alt,
)
from .permutation import (
    Permutation,
    compose,
    conjugate,
    conjugator_between,
    format_cycles,
    inverse,
    parse_cycles,
    power,
)

__all__ = [
    "Permutation",
    "compose",
    "inverse",
    "power",
    "conjugate",
    "conjugator_between",
    "parse_cycles",
    "format_cycles",
    "PermGroup",
    "StabilizerChain",
    "build_chain",
    "group_order",
    "contains",
    "orbit",
    "is_transitive",
    "is_primitive",
    "normal_closure",
    "recognize_sym_alt",
    "projection_kernel",
]
