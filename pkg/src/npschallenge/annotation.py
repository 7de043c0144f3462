"""Annotation collection and the 2-of-3 agreement filter.

Judgments are persisted to an append-only JSONL journal with last-write-wins
semantics per (pair_id, annotator_id); a pair is kept when at least two
annotators each said it makes sense AND labeled it non-entailment.
"""

from __future__ import annotations

import csv
import json
import logging
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timezone

from .generator import ChallengePair
from .jsonlio import iter_jsonl

log = logging.getLogger(__name__)

VALID_LABELS = ("entailment", "non-entailment")

AGREEMENT_THRESHOLD = 2
TARGET_ANNOTATIONS = 3


class AnnotationError(ValueError):
    pass


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass(frozen=True)
class AnnotationRecord:
    pair_id: str
    annotator_id: str
    makes_sense: bool
    label: str
    timestamp: str = ""

    def __post_init__(self):
        if not self.pair_id or not self.annotator_id:
            raise AnnotationError("pair_id and annotator_id must be non-empty")
        if self.label not in VALID_LABELS:
            raise AnnotationError(f"label must be one of {VALID_LABELS}, got {self.label!r}")
        if not self.timestamp:
            object.__setattr__(self, "timestamp", _utc_now())

    @property
    def qualifies(self) -> bool:
        """Counts toward keeping the pair: makes sense and labeled non-entailment."""
        return self.makes_sense and self.label == "non-entailment"


@dataclass(frozen=True)
class AgreementDecision:
    pair_id: str
    kept: bool
    n_annotations: int
    n_qualifying: int
    incomplete: bool  # fewer than TARGET_ANNOTATIONS judgments so far

    def to_dict(self) -> dict:
        return {
            "pair_id": self.pair_id,
            "kept": self.kept,
            "n_annotations": self.n_annotations,
            "n_qualifying": self.n_qualifying,
            "incomplete": self.incomplete,
        }


class AnnotationStore:
    """Durable store of judgments over a fixed task set.

    Writes append to a JSONL journal and are serialized by a lock; reloading
    the journal replays records in order, so the newest judgment per
    (pair_id, annotator_id) wins.
    """

    def __init__(self, journal_path: str, pairs: list[ChallengePair]):
        self.journal_path = journal_path
        self.pairs = list(pairs)
        self._by_pair: dict[str, dict[str, AnnotationRecord]] = {p.id: {} for p in self.pairs}
        self._lock = threading.Lock()
        if os.path.exists(journal_path):
            for rec in iter_jsonl(journal_path):
                record = AnnotationRecord(
                    pair_id=rec["pair_id"],
                    annotator_id=rec["annotator_id"],
                    makes_sense=bool(rec["makes_sense"]),
                    label=rec["label"],
                    timestamp=rec.get("timestamp", ""),
                )
                if record.pair_id in self._by_pair:
                    self._by_pair[record.pair_id][record.annotator_id] = record
                else:
                    log.warning("journal records unknown pair %s; skipping", record.pair_id)
        self._journal = open(journal_path, "a", encoding="utf-8")

    def close(self) -> None:
        self._journal.close()

    def __len__(self) -> int:
        return sum(len(judgments) for judgments in self._by_pair.values())

    def record(self, rec: AnnotationRecord) -> AnnotationRecord:
        """Validate, persist, and remember one judgment; returns the stored record."""
        if rec.pair_id not in self._by_pair:
            raise AnnotationError(f"unknown pair id {rec.pair_id!r}")
        with self._lock:
            if rec.annotator_id in self._by_pair[rec.pair_id]:
                log.info(
                    "annotator %s re-judged pair %s; superseding earlier record",
                    rec.annotator_id,
                    rec.pair_id,
                )
            self._journal.write(
                json.dumps(
                    {
                        "pair_id": rec.pair_id,
                        "annotator_id": rec.annotator_id,
                        "makes_sense": rec.makes_sense,
                        "label": rec.label,
                        "timestamp": rec.timestamp,
                    }
                )
                + "\n"
            )
            self._journal.flush()
            self._by_pair[rec.pair_id][rec.annotator_id] = rec
        return rec

    def records(self) -> list[AnnotationRecord]:
        return [r for judgments in self._by_pair.values() for r in judgments.values()]

    def annotations_for(self, pair_id: str) -> list[AnnotationRecord]:
        return list(self._by_pair.get(pair_id, {}).values())

    def counts(self) -> dict[str, int]:
        return {p.id: len(self._by_pair[p.id]) for p in self.pairs}

    def next_task(self, annotator_id: str) -> ChallengePair | None:
        """The least-annotated pair this annotator has not judged, if any needs work."""
        best = None
        for order, pair in enumerate(self.pairs):
            judgments = self._by_pair[pair.id]
            if annotator_id in judgments or len(judgments) >= TARGET_ANNOTATIONS:
                continue
            key = (len(judgments), order)
            if best is None or key < best[0]:
                best = (key, pair)
        return best[1] if best is not None else None


def agreement_filter(
    store: AnnotationStore, pairs: list[ChallengePair]
) -> tuple[list[ChallengePair], list[AgreementDecision]]:
    """Keep pairs with >= 2 qualifying judgments; decide every pair either way."""
    kept: list[ChallengePair] = []
    decisions: list[AgreementDecision] = []
    for pair in pairs:
        recs = store.annotations_for(pair.id)
        n_qualifying = sum(1 for r in recs if r.qualifies)
        decision = AgreementDecision(
            pair_id=pair.id,
            kept=n_qualifying >= AGREEMENT_THRESHOLD,
            n_annotations=len(recs),
            n_qualifying=n_qualifying,
            incomplete=len(recs) < TARGET_ANNOTATIONS,
        )
        decisions.append(decision)
        if decision.kept:
            kept.append(pair)
    return kept, decisions


# --- CSV round trip -----------------------------------------------------------

TASK_CSV_FIELDS = ["pair_id", "premise", "hypothesis", "annotator_id", "makes_sense", "label"]
ANNOTATION_CSV_FIELDS = ["pair_id", "annotator_id", "makes_sense", "label", "timestamp"]


def export_tasks(pairs: list[ChallengePair], path: str) -> None:
    """Write a blank annotation sheet: one row per pair, judgment columns empty."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=TASK_CSV_FIELDS)
        writer.writeheader()
        for pair in pairs:
            writer.writerow(
                {"pair_id": pair.id, "premise": pair.premise, "hypothesis": pair.hypothesis}
            )


def export_annotations(store: AnnotationStore, path: str) -> None:
    """Dump the store's current judgments as CSV (lossless, timestamps included)."""
    ordered = sorted(store.records(), key=lambda r: (r.pair_id, r.annotator_id))
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=ANNOTATION_CSV_FIELDS)
        writer.writeheader()
        for r in ordered:
            writer.writerow(
                {
                    "pair_id": r.pair_id,
                    "annotator_id": r.annotator_id,
                    "makes_sense": "true" if r.makes_sense else "false",
                    "label": r.label,
                    "timestamp": r.timestamp,
                }
            )


_TRUTHY = {"true", "1", "yes", "y"}
_FALSY = {"false", "0", "no", "n"}


def import_annotations(path: str) -> tuple[list[AnnotationRecord], list[str]]:
    """Read judgment rows from CSV; per-row problems are reported, not raised.

    Rows with all judgment columns blank (an unfilled task sheet) are skipped.
    """
    records: list[AnnotationRecord] = []
    errors: list[str] = []
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        for rownum, row in enumerate(reader, start=2):
            annotator = (row.get("annotator_id") or "").strip()
            sense_raw = (row.get("makes_sense") or "").strip().lower()
            label = (row.get("label") or "").strip()
            if not annotator and not sense_raw and not label:
                continue
            if sense_raw in _TRUTHY:
                makes_sense = True
            elif sense_raw in _FALSY:
                makes_sense = False
            else:
                errors.append(f"row {rownum}: unreadable makes_sense value {sense_raw!r}")
                continue
            try:
                records.append(
                    AnnotationRecord(
                        pair_id=(row.get("pair_id") or "").strip(),
                        annotator_id=annotator,
                        makes_sense=makes_sense,
                        label=label,
                        timestamp=(row.get("timestamp") or "").strip(),
                    )
                )
            except AnnotationError as err:
                errors.append(f"row {rownum}: {err}")
    return records, errors
