"""Executable baseline classifiers for the heuristics under diagnosis.

Each classifier is binary: it predicts entailment when its heuristic fires
(or, for the negation classifier, when it does not) and the opposite label
otherwise. Outputs use the same prediction format external models supply.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .corpus import NegationLexicon, tokenize_plain
from .generator import ChallengePair, check_subsequence
from .jsonlio import iter_jsonl, write_jsonl

LABEL_ENTAILMENT = "entailment"
LABEL_NON_ENTAILMENT = "non-entailment"

_PUNCT_TOKENS = {".", ",", "!", "?"}


@dataclass(frozen=True)
class Prediction:
    pair_id: str
    label: str
    source: str

    def __post_init__(self):
        if not self.pair_id:
            raise ValueError("prediction pair_id must be non-empty")


@dataclass
class PredictionFile:
    """An ordered list of predictions from one system."""

    predictions: list[Prediction] = field(default_factory=list)
    source: str = ""

    def by_id(self) -> dict[str, str]:
        return {p.pair_id: p.label for p in self.predictions}

    def write(self, path: str, meta: dict | None = None) -> None:
        write_jsonl(
            path,
            [{"pair_id": p.pair_id, "label": p.label, "source": p.source} for p in self.predictions],
            meta=meta,
        )

    @classmethod
    def read(cls, path: str, source: str = "") -> "PredictionFile":
        preds = []
        for rec in iter_jsonl(path):
            preds.append(
                Prediction(
                    pair_id=rec["pair_id"],
                    label=rec["label"],
                    source=rec.get("source", source),
                )
            )
        if not source and preds:
            source = preds[0].source
        return cls(predictions=preds, source=source)


def subsequence_classifier(pair: ChallengePair) -> Prediction:
    """Predict entailment iff the hypothesis is a contiguous token run of the premise."""
    fires = check_subsequence(pair.premise, pair.hypothesis)
    return Prediction(
        pair_id=pair.id,
        label=LABEL_ENTAILMENT if fires else LABEL_NON_ENTAILMENT,
        source="subsequence",
    )


def negation_classifier(pair: ChallengePair, lexicon: NegationLexicon | None = None) -> Prediction:
    """Predict non-entailment iff the premise has a negation word the hypothesis lacks."""
    if lexicon is None:
        lexicon = NegationLexicon()
    premise_tokens = tokenize_plain(pair.premise)
    hypothesis_tokens = set(tokenize_plain(pair.hypothesis))
    fires = any(tok in lexicon and tok not in hypothesis_tokens for tok in premise_tokens)
    return Prediction(
        pair_id=pair.id,
        label=LABEL_NON_ENTAILMENT if fires else LABEL_ENTAILMENT,
        source="negation",
    )


def overlap_classifier(pair: ChallengePair, threshold: float = 1.0) -> Prediction:
    """Predict entailment iff enough hypothesis tokens also occur in the premise.

    The overlap fraction is |hyp types ∩ prem types| / |hyp types| with
    punctuation tokens excluded.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"overlap threshold must be in [0, 1], got {threshold}")
    premise_tokens = {t for t in tokenize_plain(pair.premise) if t not in _PUNCT_TOKENS}
    hypothesis_tokens = {t for t in tokenize_plain(pair.hypothesis) if t not in _PUNCT_TOKENS}
    if hypothesis_tokens:
        fraction = len(hypothesis_tokens & premise_tokens) / len(hypothesis_tokens)
    else:
        fraction = 1.0
    return Prediction(
        pair_id=pair.id,
        label=LABEL_ENTAILMENT if fraction >= threshold else LABEL_NON_ENTAILMENT,
        source="overlap",
    )


CLASSIFIERS = {
    "subsequence": subsequence_classifier,
    "negation": negation_classifier,
    "overlap": overlap_classifier,
}


def run_baseline(
    pairs: list[ChallengePair],
    classifier: str,
    *,
    threshold: float = 1.0,
    lexicon: NegationLexicon | None = None,
) -> PredictionFile:
    """Run a named classifier over the pairs, preserving input order."""
    if not pairs:
        raise ValueError("cannot run a baseline over an empty pair list")
    ids = [p.id for p in pairs]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        raise ValueError(f"duplicate pair ids in input: {', '.join(dupes)}")
    if classifier not in CLASSIFIERS:
        raise ValueError(f"unknown classifier {classifier!r}; choose from {sorted(CLASSIFIERS)}")
    predictions = []
    for pair in pairs:
        if classifier == "overlap":
            predictions.append(overlap_classifier(pair, threshold=threshold))
        elif classifier == "negation":
            predictions.append(negation_classifier(pair, lexicon=lexicon))
        else:
            predictions.append(subsequence_classifier(pair))
    return PredictionFile(predictions=predictions, source=classifier)
