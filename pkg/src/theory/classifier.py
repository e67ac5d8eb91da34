"""
Classification of letter-independent invertible automata.

Dispatches on the structure of the transition digraph, attaches the
prediction that applies to it and checks the prediction against the order
computed from the faithful embedding.
"""

import logging
from typing import List, Optional

from src.algebra.gf2 import gf2_rank, pack_bits
from src.algebra.groups import (
    StabilizerChain,
    alternating_group,
    contains,
    embed_tuple,
    group_order,
    natural_group,
    recognize_sym_alt,
)
from src.algebra.permutation import Permutation, format_cycles, inverse
from src.automata.embedding import faithful_embedding, generated_group
from src.automata.formats import union_automaton
from src.automata.machine import MealyAutomaton, is_invertible
from src.automata.structure import classify_structure, cycles_and_depths
from src.errors import DegreeMismatch, NotInvertible, NotLetterIndependent, PreconditionError
from src.models import (
    ClassificationReport,
    GroupPrediction,
    PredictionLevel,
    StructureClass,
    StructureKind,
    SymAltKind,
)
from src.theory.prediction import predicted_group_cyclic, predicted_group_union, sign_bound
from src.theory.signatures import shape_from_rows, signature_tuple
from src.theory.witness import PrimeCycleWitness, witness_prime_cycle_n

logger = logging.getLogger(__name__)


def cycle_components(automaton: MealyAutomaton) -> List[List[Permutation]]:
    """Outputs along each cycle of the transition map, from its smallest state."""
    successors = [automaton.successor(q) for q in range(automaton.n)]
    cycles, _ = cycles_and_depths(successors)
    return [[automaton.output_permutation(q) for q in cyc] for cyc in cycles]


def _containment(automaton: MealyAutomaton, m: int, chain: StabilizerChain) -> bool:
    """A_k × {e} × ... placed at every preperiod coordinate j < m - 1 lies in the group."""
    k = automaton.k
    ident = Permutation.identity(k)
    for j in range(m - 1):
        for g in alternating_group(k).generators:
            element = embed_tuple([g if c == j else ident for c in range(m)])
            if not contains(chain, element):
                logger.debug(f"A_{k} generator {g} missing at coordinate {j}")
                return False
    return True


def _containment_prediction(
    automaton: MealyAutomaton, m: int, rows: List[List[int]], rank: int
) -> GroupPrediction:
    k = automaton.k
    perms = [automaton.output_permutation(q) for q in range(automaton.n)]
    reasons = []
    if recognize_sym_alt(natural_group(k, perms)) == SymAltKind.OTHER:
        reasons.append("outputs generate neither S_k nor A_k")
    if k <= 5:
        reasons.append("alphabet size must exceed 5")
    return GroupPrediction(
        k=k,
        n=m,
        sign_vector=signature_tuple(perms),
        sign_rank=rank,
        predicted_order=sign_bound(k, m, rank),
        shape_tag=shape_from_rows(rows, m),
        level=PredictionLevel.CONTAINMENT,
        hypotheses_ok=not reasons,
        reasons=reasons,
    )


def _witness(
    prediction: GroupPrediction, perms: List[Permutation], chain: StabilizerChain
) -> Optional[PrimeCycleWitness]:
    if len(perms) < 2 or not prediction.hypotheses_ok or (len(perms) > 2 and prediction.k < 7):
        return None
    try:
        return witness_prime_cycle_n(perms, chain)
    except PreconditionError as e:
        logger.info(f"No witness: {e}")
        return None


def classify(automaton: MealyAutomaton, with_witness: bool = False) -> ClassificationReport:
    """
    Classify the group generated by ``automaton``.

    Cyclic automata get the exact prediction, disjoint cycles the sign-span
    bound, paths and converging trees a containment check. The order is
    always computed; a prime-cycle witness is added for cyclic automata on
    request when the hypotheses hold.
    """
    if not automaton.is_letter_independent():
        raise NotLetterIndependent("classification needs transitions that ignore the input letter")
    if not is_invertible(automaton):
        raise NotInvertible("every state must permute the alphabet")
    structure: StructureClass = classify_structure(automaton)
    k = automaton.k

    m, images = faithful_embedding(automaton)
    rows = [[1 if p.signature() == -1 else 0 for p in images[q]] for q in range(automaton.n)]
    rank = gf2_rank(pack_bits(r) for r in rows)
    bound = sign_bound(k, m, rank)
    group = generated_group(automaton)
    verified = group_order(group)
    chain = group.chain()
    logger.debug(f"{structure.describe()}: verified order {verified}, bound {bound}")

    prediction: Optional[GroupPrediction] = None
    containment_ok: Optional[bool] = None
    witness: Optional[PrimeCycleWitness] = None
    match = False
    if structure.kind == StructureKind.CYCLIC:
        perms = cycle_components(automaton)[0]
        prediction = predicted_group_cyclic(perms)
        match = verified == prediction.predicted_order
        if with_witness:
            witness = _witness(prediction, perms, chain)
    elif structure.kind == StructureKind.DISJOINT_CYCLES:
        prediction = predicted_group_union(cycle_components(automaton))
        match = verified == prediction.predicted_order
    elif structure.kind in (StructureKind.PATH, StructureKind.CONVERGING_TREE):
        prediction = _containment_prediction(automaton, m, rows, rank)
        containment_ok = _containment(automaton, m, chain)
        match = containment_ok and bound % verified == 0
        logger.info(f"{structure.describe()}: containment {containment_ok}, empirical order {verified}")

    if prediction is not None and not match and prediction.hypotheses_ok:
        logger.warning(f"{structure.describe()}: order {verified} contradicts {prediction.predicted_order}")

    return ClassificationReport(
        structure=structure,
        states=automaton.n,
        k=k,
        embedding_length=m,
        sign_vector=prediction.sign_vector if prediction else None,
        sign_rank=rank,
        prediction=prediction,
        bound_order=bound,
        verified_order=verified,
        divides_bound=bound % verified == 0,
        containment_ok=containment_ok,
        match=match,
        witness_coordinate=witness.coordinate if witness else None,
        witness_prime=witness.prime if witness else None,
        witness_cycle=format_cycles(witness.cycle) if witness else None,
    )


def inverse_pair_automaton(sigma: Permutation, tau: Permutation) -> MealyAutomaton:
    """Two 2-cycles with outputs (σ, σ⁻¹) and (τ, τ⁻¹)."""
    return union_automaton([[sigma, inverse(sigma)], [tau, inverse(tau)]])


def inverse_pair_group(sigma: Permutation, tau: Permutation) -> ClassificationReport:
    """
    Classify ⟨(σ, σ⁻¹), (τ, τ⁻¹)⟩c. Generically (A_k × A_k) ⋊ ⟨(π, π)⟩ when
    σ or τ is odd and A_k × A_k otherwise.
    """
    if sigma.degree != tau.degree:
        raise DegreeMismatch("σ and τ must share a degree")
    if sigma.degree < 5:
        raise PreconditionError(f"alphabet size {sigma.degree} is below 5")
    return classify(inverse_pair_automaton(sigma, tau))


def outcome_key(report: ClassificationReport) -> str:
    """Bucket of a report: ``trivial``, or shape and sign rank, marked when the group came out smaller."""
    if report.verified_order == 1:
        return "trivial"
    shape = report.shape.value if report.shape else report.structure.describe()
    key = f"{shape}/r{report.sign_rank}"
    return key if report.match else f"{key}-smaller"

