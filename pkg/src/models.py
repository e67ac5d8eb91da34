"""
Core data models for Mealy Cycle Groups.

Defines the schema for structure classes, group predictions, classification
reports and the trial batches passed through the Planner-Worker-Judge swarm.
"""

from enum import Enum
from fractions import Fraction
import math
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator


class SymAltKind(str, Enum):
    """Outcome of symmetric / alternating recognition."""
    SYMMETRIC = "symmetric"
    ALTERNATING = "alternating"
    OTHER = "other"


class StructureKind(str, Enum):
    """Shapes of the transition digraph."""
    CYCLIC = "cyclic"
    PATH = "path"
    CONVERGING_TREE = "converging_tree"
    DISJOINT_CYCLES = "disjoint_cycles"
    CYCLE_WITHOUT_EXIT = "cycle_without_exit"
    GENERAL_LETTER_INDEPENDENT = "general_letter_independent"
    LETTER_DEPENDENT = "letter_dependent"


class ShapeTag(str, Enum):
    """Named group shapes A_k^n ⋊ P, keyed by the sign span P."""
    SYM_TIMES_SYM = "SymTimesSym"
    ALT_SEMIDIRECT = "AltSemidirect"
    ALT_TIMES_ALT = "AltTimesAlt"
    GENERAL_SEMIDIRECT = "GeneralSemidirect"


class PredictionLevel(str, Enum):
    """How strongly a prediction is checked against the computed group."""
    EXACT = "exact"
    HEURISTIC = "heuristic"
    BOUND = "bound"
    CONTAINMENT = "containment"


class StudyKind(str, Enum):
    """Kinds of trial batches the workers can execute."""
    SAMPLE_CYCLIC = "sample_cyclic"
    ENUMERATE = "enumerate"
    SAME_ORDER = "same_order"
    DIXON = "dixon"
    INVERSE_PAIR = "inverse_pair"


class TrialMode(str, Enum):
    SAMPLE = "sample"
    ENUMERATE = "enumerate"


class TaskStatus(str, Enum):
    """Current status of a trial batch."""
    PENDING = "pending"
    COMPLETE = "complete"
    FAILED = "failed"
    REJECTED = "rejected"


class BlockSystem(BaseModel):
    """A partition of the points preserved by a group."""
    block_of: List[int] = Field(..., description="Block id of each 0-based point")
    block_count: int = Field(..., ge=1, description="Number of blocks")

    def blocks(self) -> List[List[int]]:
        """Blocks as sorted lists of 0-based points, ordered by smallest point."""
        result: Dict[int, List[int]] = {}
        for point, block in enumerate(self.block_of):
            result.setdefault(block, []).append(point)
        return sorted(result.values(), key=lambda b: b[0])

    def is_trivial(self) -> bool:
        return self.block_count in (1, len(self.block_of))


class StructureClass(BaseModel):
    """Finest structural class of an automaton's transition digraph."""
    kind: StructureKind = Field(..., description="Structure family")
    n: Optional[int] = Field(None, description="State count for Cyclic and Path")
    arity: Optional[int] = Field(None, description="Branching of a converging tree")
    depth: Optional[int] = Field(None, description="Depth of a converging tree")
    sizes: List[int] = Field(default_factory=list, description="Cycle sizes for DisjointCycles")

    def describe(self) -> str:
        if self.kind == StructureKind.CYCLIC:
            return f"Cyclic({self.n})"
        if self.kind == StructureKind.PATH:
            return f"Path({self.n})"
        if self.kind == StructureKind.CONVERGING_TREE:
            return f"ConvergingTree({self.arity},{self.depth})"
        if self.kind == StructureKind.DISJOINT_CYCLES:
            return "DisjointCycles([" + ",".join(str(s) for s in self.sizes) + "])"
        return {
            StructureKind.CYCLE_WITHOUT_EXIT: "CycleWithoutExit",
            StructureKind.GENERAL_LETTER_INDEPENDENT: "GeneralLetterIndependent",
            StructureKind.LETTER_DEPENDENT: "LetterDependent",
        }[self.kind]


class SignVector(BaseModel):
    """Parities of a tuple of permutations over GF(2); 1 marks an odd permutation."""
    bits: Tuple[int, ...] = Field(..., description="One bit per coordinate")

    @field_validator("bits")
    @classmethod
    def _binary(cls, bits: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"sign bits must be 0 or 1, got {bits}")
        return bits

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


class GroupPrediction(BaseModel):
    """Predicted group A_k^n ⋊ P for a tuple of permutations."""
    k: int = Field(..., ge=1, description="Alphabet size")
    n: int = Field(..., ge=1, description="Tuple length (period)")
    sign_vector: SignVector = Field(..., description="Parities of the tuple")
    sign_rank: int = Field(..., ge=0, description="GF(2) rank of the sign span")
    predicted_order: int = Field(..., ge=1, description="(k!/2)^n * 2^rank")
    shape_tag: ShapeTag = Field(..., description="Named shape of the prediction")
    level: PredictionLevel = Field(default=PredictionLevel.EXACT, description="How the prediction is checked")
    hypotheses_ok: bool = Field(..., description="Whether the exactness hypotheses hold")
    reasons: List[str] = Field(default_factory=list, description="Failed hypotheses, if any")


class ClassificationReport(BaseModel):
    """
    Everything computed about one automaton group.

    For exact and bound predictions ``match`` means the verified order equals
    the predicted order. For containment predictions it means every
    containment check passed and the verified order divides the sign bound.
    """
    structure: StructureClass = Field(..., description="Structure of the transition digraph")
    states: int = Field(..., ge=1, description="Number of states")
    k: int = Field(..., ge=1, description="Alphabet size")
    embedding_length: int = Field(..., ge=1, description="Coordinates of the faithful embedding")
    sign_vector: Optional[SignVector] = Field(None, description="Sign bits of the states, when a prediction applies")
    sign_rank: int = Field(..., ge=0, description="GF(2) rank of the generators' sign rows")
    prediction: Optional[GroupPrediction] = Field(None, description="Prediction, where one applies")
    bound_order: int = Field(..., ge=1, description="(k!/2)^m * 2^rank, an unconditional multiple of the order")
    verified_order: int = Field(..., ge=1, description="Order computed by Schreier-Sims")
    divides_bound: bool = Field(..., description="verified_order divides bound_order")
    containment_ok: Optional[bool] = Field(None, description="Containment checks for path and tree shapes")
    match: bool = Field(..., description="Prediction confirmed")
    witness_coordinate: Optional[int] = Field(None, description="Coordinate of the prime-cycle witness")
    witness_prime: Optional[int] = Field(None, description="Length of the prime-cycle witness")
    witness_cycle: Optional[str] = Field(None, description="The witness cycle in 1-based notation")

    @property
    def hypotheses_ok(self) -> bool:
        return self.prediction is not None and self.prediction.hypotheses_ok

    @property
    def shape(self) -> Optional[ShapeTag]:
        return self.prediction.shape_tag if self.prediction else None

    @property
    def predicted_order(self) -> Optional[int]:
        return self.prediction.predicted_order if self.prediction else None


class TrialConfig(BaseModel):
    """Parameters of a seeded study."""
    n: int = Field(default=2, ge=1, description="States")
    k: int = Field(..., ge=1, description="Letters")
    trials: int = Field(default=1000, ge=1, description="Number of trials")
    seed: int = Field(..., ge=0, lt=2**64, description="64-bit seed")
    mode: TrialMode = Field(default=TrialMode.SAMPLE, description="Sampling or exhaustive enumeration")


class ValidationResult(BaseModel):
    """Result of Judge validation."""
    is_valid: bool = Field(..., description="Whether the batch passes validation")
    validation_notes: str = Field(default="", description="Detailed validation reasoning")
    failed_constraints: List[str] = Field(default_factory=list, description="List of failed validation constraints")


class TrialBatch(BaseModel):
    """
    A contiguous range of trials to be executed by a Worker.

    This is the core data structure passed from Planner to Worker.
    """
    batch_id: int = Field(..., ge=0, description="Position of the batch in the plan")
    kind: StudyKind = Field(..., description="Which study the trials belong to")
    n: int = Field(default=2, ge=1, description="States per automaton")
    k: int = Field(..., ge=1, description="Letters")
    seed: int = Field(default=0, ge=0, description="Study seed")
    start: int = Field(..., ge=0, description="First trial index")
    stop: int = Field(..., ge=0, description="One past the last trial index")
    options: Dict[str, Any] = Field(default_factory=dict, description="Study-specific switches")

    @property
    def size(self) -> int:
        return self.stop - self.start


class TrialRecord(BaseModel):
    """Outcome of a single trial."""
    trial: int = Field(..., ge=0, description="Trial index")
    weight: int = Field(default=1, ge=1, description="Multiplicity (conjugacy class size in enumeration)")
    outcome: str = Field(default="", description="Bucket key")
    sign_vector: str = Field(default="", description="Sign bits of the drawn tuple")
    sign_rank: int = Field(default=0, ge=0)
    shape: str = Field(default="")
    predicted_order: Optional[int] = Field(None)
    verified_order: Optional[int] = Field(None)
    match: bool = Field(default=False)
    hypotheses_ok: bool = Field(default=False)
    flag: Optional[bool] = Field(None, description="Study-specific boolean (same order, Sym/Alt hit)")
    pattern: Optional[str] = Field(None, description="Parity pattern of an inverse-pair draw")


class BatchResult(BaseModel):
    """
    Result of a Worker's batch execution.

    This is passed from Worker to Judge.
    """
    batch_id: int = Field(..., description="ID of the associated batch")
    worker_id: str = Field(..., description="ID of the worker that executed the batch")
    status: TaskStatus = Field(..., description="Execution status")
    records: List[TrialRecord] = Field(default_factory=list, description="One record per trial")
    validation: Optional[ValidationResult] = Field(None, description="Judge validation result")
    execution_time_ms: Optional[int] = Field(None, description="Execution duration in milliseconds")
    error_message: Optional[str] = Field(None, description="Error details if execution failed")


class OutcomeBucket(BaseModel):
    outcome: str = Field(..., description="Outcome key")
    count: int = Field(..., ge=0, description="Weighted number of trials")
    reference: Optional[float] = Field(None, description="Limit probability, where known")


class DistributionReport(BaseModel):
    """Outcome frequencies of a study; probabilities are exact fractions of the counts."""
    n: int
    k: int
    mode: TrialMode
    seed: Optional[int] = None
    total: int = Field(..., ge=0, description="Sum of bucket counts")
    buckets: List[OutcomeBucket] = Field(default_factory=list)
    mismatches_with_hypotheses: int = Field(default=0, description="match=false records that claimed hypotheses_ok")
    match_rates: Dict[str, float] = Field(default_factory=dict, description="Match rate per parity pattern")
    notes: List[str] = Field(default_factory=list, description="Tolerance policy printed beside deviations")
    records: List[TrialRecord] = Field(default_factory=list, description="Per-trial records in trial order")

    def probabilities(self) -> Dict[str, Fraction]:
        return {b.outcome: Fraction(b.count, self.total) for b in self.buckets}

    def probability(self, outcome: str) -> Fraction:
        return self.probabilities().get(outcome, Fraction(0))

    def standard_error(self, outcome: str) -> float:
        p = float(self.probability(outcome))
        return math.sqrt(p * (1 - p) / self.total) if self.total else 0.0

    def abs_dev(self, outcome: str) -> Optional[float]:
        for b in self.buckets:
            if b.outcome == outcome and b.reference is not None:
                return abs(float(self.probability(outcome)) - b.reference)
        return None


class OrderStatsReport(BaseModel):
    """Estimate of k^2 * P(o(σ) = o(τ)) against the conjectured band."""
    k: int
    trials: int
    same_order_count: int
    k2_estimate: float
    stderr: float
    band_lo: float
    band_hi: float
    conjugacy_lower_bound: float = Field(..., description="k^2 * P(σ and τ conjugate)")


class DixonReport(BaseModel):
    """Measured P(<σ,τ> ∈ {S_k, A_k}) beside the truncated Dixon series."""
    k: int
    reference: float
    trials: int = 0
    hits: int = 0
    frequency: Optional[float] = None
    stderr: Optional[float] = None
