"""Score prediction files against gold sets and render accuracy tables.

Accuracies are exact rationals. Reports mirror the standard layout: one row
per system, one column per evaluation set, and a final chance row; markdown
output rounds to two decimals while CSV keeps full precision.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .generator import pair_from_dict
from .heuristics import PredictionFile
from .jsonlio import iter_jsonl

log = logging.getLogger(__name__)

THREE_WAY_LABELS = {"entailment", "contradiction", "neutral"}
BINARY_LABELS = {"entailment", "non-entailment"}


class EvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class GoldRecord:
    """Minimal gold item for scoring arbitrary label files (e.g. an NLI dev set)."""

    id: str
    gold: str
    premise_has_negation: bool = False


@dataclass
class EvalRow:
    system_name: str
    per_set: dict[str, Fraction] = field(default_factory=dict)
    support: dict[str, int] = field(default_factory=dict)


@dataclass
class NegationBreakdown:
    acc_with_negation: Fraction | None
    acc_without_negation: Fraction | None
    n_with: int
    n_without: int


def collapse_label(label: str) -> str:
    """Map a 3-way label to the binary scheme; binary labels pass through."""
    if label == "entailment":
        return "entailment"
    if label in ("contradiction", "neutral", "non-entailment"):
        return "non-entailment"
    raise EvaluationError(f"unknown label {label!r}")


def chance_row(label_scheme: str) -> Fraction:
    """Chance accuracy for a uniform guesser under the given label scheme."""
    if label_scheme == "three_way":
        return Fraction(1, 3)
    if label_scheme == "binary":
        return Fraction(1, 2)
    raise EvaluationError(f"unknown label scheme {label_scheme!r}")


def _matched_outcomes(
    predictions: PredictionFile, gold: Sequence, scheme: str
) -> list[tuple[object, bool]]:
    """Pair each gold item with whether its prediction is correct.

    Missing predictions are fatal; extra predictions are ignored with a warning.
    """
    by_id = predictions.by_id()
    missing = [g.id for g in gold if g.id not in by_id]
    if missing:
        raise EvaluationError(f"missing predictions for gold ids: {', '.join(missing)}")
    extra = sorted(set(by_id) - {g.id for g in gold})
    if extra:
        log.warning("%d extra predictions ignored (e.g. %s)", len(extra), extra[0])
    outcomes = []
    for g in gold:
        predicted = by_id[g.id]
        if scheme == "binary":
            correct = collapse_label(predicted) == collapse_label(g.gold)
        elif scheme == "three_way":
            if predicted not in THREE_WAY_LABELS:
                raise EvaluationError(f"label {predicted!r} is not a three-way label")
            correct = predicted == g.gold
        else:
            raise EvaluationError(f"unknown label scheme {scheme!r}")
        outcomes.append((g, correct))
    return outcomes


def accuracy(predictions: PredictionFile, gold: Sequence, scheme: str = "binary") -> Fraction:
    """Exact fraction of gold items whose (collapsed) prediction matches gold."""
    if not gold:
        raise EvaluationError("cannot score against an empty gold set")
    outcomes = _matched_outcomes(predictions, gold, scheme)
    return Fraction(sum(1 for _, ok in outcomes if ok), len(outcomes))


def negation_breakdown(
    predictions: PredictionFile, gold: Sequence, scheme: str = "binary"
) -> NegationBreakdown:
    """Accuracy split by whether the gold premise carries a negation word."""
    outcomes = _matched_outcomes(predictions, gold, scheme)
    with_neg = [ok for g, ok in outcomes if g.premise_has_negation]
    without_neg = [ok for g, ok in outcomes if not g.premise_has_negation]
    return NegationBreakdown(
        acc_with_negation=Fraction(sum(with_neg), len(with_neg)) if with_neg else None,
        acc_without_negation=Fraction(sum(without_neg), len(without_neg)) if without_neg else None,
        n_with=len(with_neg),
        n_without=len(without_neg),
    )


def _columns_of(rows: Sequence[EvalRow]) -> list[str]:
    columns = list(rows[0].per_set)
    for row in rows[1:]:
        if set(row.per_set) != set(columns):
            raise EvaluationError(
                f"row {row.system_name!r} reports sets {sorted(row.per_set)}, "
                f"expected {sorted(columns)}"
            )
    return columns


def render_report(
    rows: Sequence[EvalRow],
    format: str = "markdown",
    schemes: dict[str, str] | None = None,
    columns: Sequence[str] | None = None,
) -> str:
    """Render system rows plus a chance row as a markdown or CSV table.

    ``schemes`` maps each set name to ``binary`` or ``three_way`` and controls
    the chance row (binary, 0.50, when unspecified).
    """
    if not rows:
        raise EvaluationError("no rows to render")
    cols = list(columns) if columns is not None else _columns_of(rows)
    if columns is not None:
        _columns_of(rows)  # still validate consistency
    schemes = schemes or {}
    for row in rows:
        for col in cols:
            if row.support.get(col, 1) < 1:
                raise EvaluationError(f"row {row.system_name!r} has support 0 for {col!r}")
    chance = [chance_row(schemes.get(col, "binary")) for col in cols]

    if format == "markdown":
        lines = ["| System | " + " | ".join(cols) + " |"]
        lines.append("|" + " --- |" * (len(cols) + 1))
        for row in rows:
            cells = [f"{float(row.per_set[c]):.2f}" for c in cols]
            lines.append(f"| {row.system_name} | " + " | ".join(cells) + " |")
        lines.append("| Chance | " + " | ".join(f"{float(v):.2f}" for v in chance) + " |")
        return "\n".join(lines) + "\n"
    if format == "csv":
        lines = ["system," + ",".join(cols)]
        for row in rows:
            lines.append(row.system_name + "," + ",".join(repr(float(row.per_set[c])) for c in cols))
        lines.append("Chance," + ",".join(repr(float(v)) for v in chance))
        return "\n".join(lines) + "\n"
    raise EvaluationError(f"unknown report format {format!r}")


def read_gold(path: str) -> list:
    """Load a gold JSONL file: full challenge pairs, or minimal id/label records."""
    gold = []
    for rec in iter_jsonl(path):
        try:
            gold.append(pair_from_dict(rec))
        except KeyError:
            gold.append(
                GoldRecord(
                    id=rec.get("id") or rec["pair_id"],
                    gold=rec.get("gold") or rec["label"],
                    premise_has_negation=bool(rec.get("premise_has_negation", False)),
                )
            )
    return gold
