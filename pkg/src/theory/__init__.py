"""Sign vectors, predicted groups, witnesses and classification."""

from .classifier import classify, inverse_pair_group, outcome_key
from .prediction import predicted_group_cyclic, predicted_group_union
from .signatures import (
    circulant_rank,
    orders_tuple_primitive,
    sign_group_order,
    signature_tuple,
    union_exponent,
    union_sign_rank,
)
from .witness import PrimeCycleWitness, coprime_split, witness_prime_cycle_2, witness_prime_cycle_n

__all__ = [
    "signature_tuple",
    "circulant_rank",
    "sign_group_order",
    "orders_tuple_primitive",
    "union_exponent",
    "union_sign_rank",
    "predicted_group_cyclic",
    "predicted_group_union",
    "PrimeCycleWitness",
    "coprime_split",
    "witness_prime_cycle_2",
    "witness_prime_cycle_n",
    "classify",
    "inverse_pair_group",
    "outcome_key",
]
