"""Text and CSV renderings of reports. Every renderer returns a string ending in a newline."""

import csv
import io
from typing import Iterable, List, Optional, Sequence

from src.models import (
    ClassificationReport,
    DistributionReport,
    DixonReport,
    OrderStatsReport,
    TrialRecord,
)

SAMPLE_HEADER = ["trial", "sign_vector", "sign_rank", "shape", "predicted_order", "verified_order", "match", "hypotheses_ok"]
SUMMARY_HEADER = ["outcome", "count", "probability", "reference", "abs_dev"]
ORDER_STATS_HEADER = ["k", "trials", "same_order_count", "k2_estimate", "stderr", "band_lo", "band_hi"]
CLASSIFY_HEADER = [
    "structure", "n", "k", "sign_vector", "sign_rank", "predicted_order",
    "verified_order", "match", "witness_prime", "hypotheses_ok",
]
DIXON_HEADER = ["k", "reference", "trials", "hits", "frequency", "stderr"]


def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def _csv(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buffer.getvalue()


def _sample_row(r: TrialRecord) -> List[object]:
    return [r.trial, r.sign_vector, r.sign_rank, r.shape, r.predicted_order, r.verified_order, r.match, r.hypotheses_ok]


def sample_csv(records: List[TrialRecord]) -> str:
    return _csv(SAMPLE_HEADER, (_sample_row(r) for r in records))


def enumeration_csv(records: List[TrialRecord]) -> str:
    """Per-classification rows of an enumeration; ``weight`` is the number of pairs each row stands for."""
    return _csv(SAMPLE_HEADER + ["weight"], (_sample_row(r) + [r.weight] for r in records))


def summary_csv(report: DistributionReport) -> str:
    probabilities = report.probabilities()
    return _csv(
        SUMMARY_HEADER,
        (
            (b.outcome, b.count, float(probabilities[b.outcome]) if report.total else 0.0,
             b.reference, report.abs_dev(b.outcome))
            for b in report.buckets
        ),
    )


def order_stats_csv(report: OrderStatsReport) -> str:
    return _csv(
        ORDER_STATS_HEADER,
        [(report.k, report.trials, report.same_order_count, report.k2_estimate,
          report.stderr, report.band_lo, report.band_hi)],
    )


def classify_row(report: ClassificationReport) -> List[object]:
    return [
        report.structure.describe(),
        report.states,
        report.k,
        str(report.sign_vector) if report.sign_vector else None,
        report.sign_rank,
        report.predicted_order,
        report.verified_order,
        report.match,
        report.witness_prime,
        report.hypotheses_ok,
    ]


def classify_csv(reports: List[ClassificationReport]) -> str:
    return _csv(CLASSIFY_HEADER, (classify_row(r) for r in reports))


def dixon_csv(report: DixonReport) -> str:
    return _csv(DIXON_HEADER, [(report.k, report.reference, report.trials, report.hits, report.frequency, report.stderr)])


def _block(pairs: Sequence[tuple]) -> str:
    return "".join(f"{key}: {_cell(value)}\n" for key, value in pairs)


def classification_text(report: ClassificationReport) -> str:
    """Flat key-value block."""
    prediction = report.prediction
    pairs = [
        ("structure", report.structure.describe()),
        ("states", report.states),
        ("letters", report.k),
        ("embedding_length", report.embedding_length),
        ("sign_vector", str(report.sign_vector) if report.sign_vector else None),
        ("sign_rank", report.sign_rank),
        ("shape", report.shape.value if report.shape else None),
        ("prediction_level", prediction.level.value if prediction else None),
        ("predicted_order", report.predicted_order),
        ("bound_order", report.bound_order),
        ("verified_order", report.verified_order),
        ("divides_bound", report.divides_bound),
        ("containment_ok", report.containment_ok),
        ("match", report.match),
        ("hypotheses_ok", report.hypotheses_ok),
    ]
    if prediction and prediction.reasons:
        pairs.append(("reasons", "; ".join(prediction.reasons)))
    if report.witness_prime is not None:
        pairs += [
            ("witness_coordinate", report.witness_coordinate),
            ("witness_prime", report.witness_prime),
            ("witness_cycle", report.witness_cycle),
        ]
    return _block(pairs)


def distribution_text(report: DistributionReport, title: Optional[str] = None) -> str:
    lines = [title or f"outcome distribution (n={report.n}, k={report.k}, mode={report.mode.value})"]
    if report.seed is not None:
        lines.append(f"seed: {report.seed}")
    lines.append(f"total: {report.total}")
    for b in report.buckets:
        p = report.probability(b.outcome)
        line = f"  {b.outcome}: {b.count} ({float(p):.6f} ± {report.standard_error(b.outcome):.6f})"
        if b.reference is not None:
            line += f" reference {b.reference:.6f} deviation {report.abs_dev(b.outcome):.6f}"
        lines.append(line)
    for pattern, rate in report.match_rates.items():
        lines.append(f"  match rate {pattern}: {rate:.4f}")
    if report.mismatches_with_hypotheses:
        lines.append(f"mismatches under the hypotheses: {report.mismatches_with_hypotheses}")
    lines.extend(f"note: {n}" for n in report.notes)
    return "\n".join(lines) + "\n"


def order_stats_text(report: OrderStatsReport) -> str:
    return _block([
        ("study", "same-order conjecture check (not a theorem check)"),
        ("k", report.k),
        ("trials", report.trials),
        ("same_order_count", report.same_order_count),
        ("k2_estimate", report.k2_estimate),
        ("stderr", report.stderr),
        ("conjectured_band", f"[{report.band_lo}, {report.band_hi}]"),
        ("conjugacy_lower_bound", report.conjugacy_lower_bound),
    ])


def dixon_text(report: DixonReport) -> str:
    pairs = [("k", report.k), ("reference", report.reference)]
    if report.trials:
        pairs += [("trials", report.trials), ("hits", report.hits),
                  ("frequency", report.frequency), ("stderr", report.stderr)]
    return _block(pairs)
