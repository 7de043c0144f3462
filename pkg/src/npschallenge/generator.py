"""Instantiate NP1-V1-S1 premises whose hypothesis is a nonentailed prefix.

Every emitted pair satisfies, by construction: the hypothesis tokens are
NP1 + V1 + NP2 where NP2 is the subject of the embedded clause S1, and the
hypothesis is a contiguous prefix of the premise. The gold label is always
non-entailment.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field, replace
from typing import Sequence

from .corpus import NegationLexicon, tokenize_cased, tokenize_plain
from .extraction import (
    Clause,
    ClauseBank,
    NounPhrase,
    SubjectVerbIndex,
    VerbObjectIndex,
    clause_from_dict,
    clause_to_dict,
    np_from_dict,
    np_to_dict,
)
from .jsonlio import iter_jsonl, write_jsonl

log = logging.getLogger(__name__)

GOLD_NON_ENTAILMENT = "non-entailment"

VARIANT_ORIGINAL = "original"
VARIANT_NO_NEGATION = "no_negation"

# Built-in lemma -> past-form table for the configured verbs; extensible via
# a verb file on the CLI.
VERB_PAST_FORMS = {
    "hear": "heard",
    "believe": "believed",
    "feel": "felt",
    "claim": "claimed",
}

DEFAULT_VERBS = [(lemma, VERB_PAST_FORMS[lemma]) for lemma in ("hear", "believe", "feel", "claim")]

_ATTACHED_PUNCT = {".", ",", "!", "?"}


@dataclass(frozen=True)
class Provenance:
    """Sentence ids attesting the three template constraints."""

    subject: str  # NP1 appeared as subject of V1 here
    object: str  # the subject of S1 appeared as direct object of V1 here
    clause: str  # S1 appeared here


@dataclass(frozen=True)
class ChallengePair:
    id: str
    premise: str
    hypothesis: str
    gold: str
    np1: NounPhrase
    verb_lemma: str
    verb_form: str
    s1: Clause
    np2: NounPhrase
    variant: str
    premise_has_negation: bool
    provenance: Provenance


@dataclass
class GenerationConfig:
    verbs: list[tuple[str, str]] = field(default_factory=lambda: list(DEFAULT_VERBS))
    sample_size: int = 200
    seed: int = 0
    negation_lexicon: NegationLexicon = field(default_factory=NegationLexicon)
    match_mode: str = "surface"  # "surface" or "head"

    def __post_init__(self):
        if self.sample_size < 1:
            raise ValueError("sample_size must be >= 1")
        if not self.verbs:
            raise ValueError("verb list must be non-empty")
        if self.match_mode not in ("surface", "head"):
            raise ValueError(f"unknown match mode {self.match_mode!r}")


def render(tokens: Sequence[str]) -> str:
    """Realize a token sequence as a sentence: space-joined, capitalized, final period."""
    if not tokens:
        raise ValueError("cannot render an empty token list")
    text = " ".join(tokens)
    return text[0].upper() + text[1:] + "."


def check_subsequence(premise: str, hypothesis: str) -> bool:
    """True iff the hypothesis tokens occur as a contiguous run in the premise.

    Both sides are tokenized case-insensitively and a final period is ignored.
    """
    prem = _drop_final_period(tokenize_plain(premise))
    hyp = _drop_final_period(tokenize_plain(hypothesis))
    if not hyp:
        return True
    return any(prem[i : i + len(hyp)] == hyp for i in range(len(prem) - len(hyp) + 1))


def _drop_final_period(tokens: list[str]) -> list[str]:
    return tokens[:-1] if tokens and tokens[-1] == "." else tokens


def _np_matches(candidate: NounPhrase, subject: NounPhrase, mode: str) -> bool:
    if mode == "head":
        return candidate.head_lemma == subject.head_lemma
    return candidate.surface == subject.surface and candidate.head_lemma == subject.head_lemma


def generate_candidates(
    sv: SubjectVerbIndex,
    vo: VerbObjectIndex,
    bank: ClauseBank,
    cfg: GenerationConfig,
) -> list[ChallengePair]:
    """Cross the indexes under the three attestation constraints.

    Emits one pair per (verb, NP1, S1) combination where NP1 is an attested
    subject of the verb, S1 has a clause-initial subject attested as the
    verb's direct object, and S1 extends beyond its subject. Output is
    deduplicated on (premise, hypothesis) and sorted lexicographically.
    """
    raw: list[ChallengePair] = []
    for lemma, verb_form in cfg.verbs:
        subjects = sv.get(lemma, set())
        objects = vo.get(lemma, set())
        if not subjects and not objects:
            log.warning("verb %r (%s) has no subject or object attestations", lemma, verb_form)
            continue
        if not subjects or not objects:
            continue
        for clause in bank:
            if not clause.subject_is_prefix:
                continue
            if len(clause.surface) <= len(clause.subject.surface):
                continue  # degenerate S1: premise would equal hypothesis
            matches = sorted(
                (np for np in objects if _np_matches(np, clause.subject, cfg.match_mode)),
                key=lambda np: (np.source_sentence, np.span),
            )
            if not matches:
                continue
            attested_object = matches[0]
            np2 = clause.subject
            for np1 in subjects:
                premise = render(list(np1.forms) + [verb_form] + list(clause.forms))
                hypothesis = render(list(np1.forms) + [verb_form] + list(np2.forms))
                raw.append(
                    ChallengePair(
                        id="",
                        premise=premise,
                        hypothesis=hypothesis,
                        gold=GOLD_NON_ENTAILMENT,
                        np1=np1,
                        verb_lemma=lemma,
                        verb_form=verb_form,
                        s1=clause,
                        np2=np2,
                        variant=VARIANT_ORIGINAL,
                        premise_has_negation=any(
                            tok in cfg.negation_lexicon for tok in tokenize_plain(premise)
                        ),
                        provenance=Provenance(
                            subject=np1.source_sentence,
                            object=attested_object.source_sentence,
                            clause=clause.source_sentence,
                        ),
                    )
                )
    raw.sort(
        key=lambda p: (
            p.premise,
            p.hypothesis,
            p.provenance.subject,
            p.provenance.object,
            p.provenance.clause,
        )
    )
    seen: set[tuple[str, str]] = set()
    out: list[ChallengePair] = []
    for pair in raw:
        key = (pair.premise, pair.hypothesis)
        if key in seen:
            continue
        seen.add(key)
        out.append(pair)
    width = max(4, len(str(len(out))))
    return [replace(p, id=f"cand-{i:0{width}d}") for i, p in enumerate(out, start=1)]


def sample_set(candidates: list[ChallengePair], n: int, seed: int) -> list[ChallengePair]:
    """Seeded uniform sample without replacement; ids become ``nps-<ordinal>``."""
    if n < 1:
        raise ValueError("sample size must be >= 1")
    k = min(n, len(candidates))
    rng = random.Random(seed)
    chosen = sorted(rng.sample(range(len(candidates)), k))
    width = max(4, len(str(k)))
    return [
        replace(candidates[idx], id=f"nps-{ordinal:0{width}d}")
        for ordinal, idx in enumerate(chosen, start=1)
    ]


def _strip_text(text: str, lexicon: NegationLexicon) -> str:
    tokens = tokenize_cased(text)
    kept = [t for t in tokens if t not in lexicon]
    if len(kept) == len(tokens):
        return text  # no negation: content passes through untouched
    out = ""
    for tok in kept:
        if tok in _ATTACHED_PUNCT or not out:
            out += tok
        else:
            out += " " + tok
    return out[0].upper() + out[1:] if out else out


def strip_negation(pair: ChallengePair, lexicon: NegationLexicon | None = None) -> ChallengePair:
    """Delete every negation-lexicon token from premise and hypothesis.

    Returns the no-negation variant of the pair (id suffixed ``-noneg``); the
    text is re-rendered with single spaces and a capitalized first word only
    when something was actually removed.
    """
    if pair.variant != VARIANT_ORIGINAL:
        raise ValueError(f"can only strip negation from original pairs, got {pair.variant!r}")
    if lexicon is None:
        lexicon = NegationLexicon()
    return replace(
        pair,
        id=pair.id + "-noneg",
        premise=_strip_text(pair.premise, lexicon),
        hypothesis=_strip_text(pair.hypothesis, lexicon),
        variant=VARIANT_NO_NEGATION,
        premise_has_negation=False,
    )


def audit_provenance(
    pairs: list[ChallengePair],
    sv: SubjectVerbIndex,
    vo: VerbObjectIndex,
    bank: ClauseBank,
    match_mode: str = "surface",
) -> list[str]:
    """Re-verify the three attestation constraints against (reloaded) indexes.

    Returns one message per violation; an empty list means every pair passed.
    """
    violations: list[str] = []
    clause_set = set(bank)
    for pair in pairs:
        if pair.np1 not in sv.get(pair.verb_lemma, set()):
            violations.append(f"{pair.id}: NP1 {pair.np1.text!r} not an attested subject of {pair.verb_lemma!r}")
        if not any(_np_matches(np, pair.np2, match_mode) for np in vo.get(pair.verb_lemma, set())):
            violations.append(f"{pair.id}: NP2 {pair.np2.text!r} not an attested object of {pair.verb_lemma!r}")
        if pair.s1 not in clause_set:
            violations.append(f"{pair.id}: S1 {pair.s1.text!r} not in the clause bank")
    return violations


# --- JSONL serialization -----------------------------------------------------


def pair_to_dict(pair: ChallengePair) -> dict:
    return {
        "id": pair.id,
        "premise": pair.premise,
        "hypothesis": pair.hypothesis,
        "gold": pair.gold,
        "np1": np_to_dict(pair.np1),
        "verb_lemma": pair.verb_lemma,
        "verb_form": pair.verb_form,
        "s1": clause_to_dict(pair.s1),
        "np2": np_to_dict(pair.np2),
        "variant": pair.variant,
        "premise_has_negation": pair.premise_has_negation,
        "provenance": {
            "subject": pair.provenance.subject,
            "object": pair.provenance.object,
            "clause": pair.provenance.clause,
        },
    }


def pair_from_dict(d: dict) -> ChallengePair:
    return ChallengePair(
        id=d["id"],
        premise=d["premise"],
        hypothesis=d["hypothesis"],
        gold=d["gold"],
        np1=np_from_dict(d["np1"]),
        verb_lemma=d["verb_lemma"],
        verb_form=d["verb_form"],
        s1=clause_from_dict(d["s1"]),
        np2=np_from_dict(d["np2"]),
        variant=d["variant"],
        premise_has_negation=d["premise_has_negation"],
        provenance=Provenance(**d["provenance"]),
    )


def write_pairs(pairs: list[ChallengePair], path: str, meta: dict | None = None) -> None:
    write_jsonl(path, [pair_to_dict(p) for p in pairs], meta=meta)


def read_pairs(path: str) -> list[ChallengePair]:
    return [pair_from_dict(rec) for rec in iter_jsonl(path)]
