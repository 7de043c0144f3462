"""Mine a parsed corpus for template ingredients: subjects, objects, and clauses.

Three indexes feed the generator: noun phrases attested as ``nsubj`` of each
verb, noun phrases attested as ``obj`` of each verb, and a bank of root and
``ccomp`` clauses with an overt nominal subject.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .corpus import ParsedSentence, Token
from .jsonlio import iter_jsonl, write_jsonl

# Dependents folded into an NP span around its head noun.
NP_SPAN_RELATIONS = frozenset({"det", "amod", "compound", "nmod:poss"})

# POS tags admitted as NP heads. Bare pronoun heads are excluded: the template
# wants contentful noun phrases, and subjects like "no one" would otherwise
# multiply template slots beyond what surface matching can sanity-check.
NOMINAL_UPOS = frozenset({"NOUN", "PROPN"})

VERBAL_UPOS = frozenset({"VERB"})

# Tags counted as evidence that a clause is predicated (finite-verb proxy).
CLAUSE_VERB_UPOS = frozenset({"VERB", "AUX"})


@dataclass(frozen=True)
class NounPhrase:
    """A contiguous noun-phrase span from one corpus sentence.

    ``surface`` is the lowercase token sequence used for all matching;
    ``forms`` preserves corpus casing for rendering. ``span`` is the 1-based
    inclusive (start, end) index range in the source sentence.
    """

    surface: tuple[str, ...]
    forms: tuple[str, ...]
    head_lemma: str
    source_sentence: str
    span: tuple[int, int]

    def __post_init__(self):
        if not self.surface:
            raise ValueError("noun phrase surface must be non-empty")
        if self.span[1] - self.span[0] + 1 != len(self.surface):
            raise ValueError(f"span {self.span} does not cover {len(self.surface)} tokens")

    @property
    def text(self) -> str:
        return " ".join(self.surface)


@dataclass(frozen=True)
class Clause:
    """A root or complement clause usable as the template's S1 slot."""

    surface: tuple[str, ...]
    forms: tuple[str, ...]
    subject: NounPhrase
    subject_is_prefix: bool
    source_sentence: str

    @property
    def text(self) -> str:
        return " ".join(self.surface)


SubjectVerbIndex = dict[str, set[NounPhrase]]
VerbObjectIndex = dict[str, set[NounPhrase]]
ClauseBank = list[Clause]


def noun_phrase_at(sent: ParsedSentence, head: Token) -> NounPhrase:
    """Build the NP span headed by ``head``: the maximal contiguous run around
    the head covering its det/amod/compound/possessive dependents."""
    members = {head.index}
    for child in sent.children(head.index):
        if child.deprel in NP_SPAN_RELATIONS:
            members |= sent.subtree_indices(child.index)
    start = head.index
    while start - 1 in members:
        start -= 1
    end = head.index
    while end + 1 in members:
        end += 1
    forms = tuple(sent.token_at(i).form for i in range(start, end + 1))
    return NounPhrase(
        surface=tuple(f.lower() for f in forms),
        forms=forms,
        head_lemma=head.lemma,
        source_sentence=sent.id,
        span=(start, end),
    )


def _collect_np_index(corpus: Iterable[ParsedSentence], relation: str) -> dict[str, set[NounPhrase]]:
    index: dict[str, set[NounPhrase]] = {}
    for sent in corpus:
        for verb in sent.tokens:
            if verb.upos not in VERBAL_UPOS:
                continue
            for dep in sent.children(verb.index):
                if dep.deprel != relation or dep.upos not in NOMINAL_UPOS:
                    continue
                index.setdefault(verb.lemma, set()).add(noun_phrase_at(sent, dep))
    return index


def extract_subject_verb(corpus: Iterable[ParsedSentence]) -> SubjectVerbIndex:
    """Index noun phrases attested as the subject of each verb lemma."""
    return _collect_np_index(corpus, "nsubj")


def extract_verb_object(corpus: Iterable[ParsedSentence]) -> VerbObjectIndex:
    """Index noun phrases attested as the direct object of each verb lemma.

    NP spans exclude clausal post-modifiers, so an object carrying a relative
    clause contributes only its core NP.
    """
    return _collect_np_index(corpus, "obj")


def _clause_at(sent: ParsedSentence, head: Token, strip_that: bool) -> Clause | None:
    indices = sent.subtree_indices(head.index)
    lo, hi = min(indices), max(indices)
    if indices != set(range(lo, hi + 1)):
        return None  # non-projective span; out of scope
    span = list(range(lo, hi + 1))
    while span and sent.token_at(span[0]).deprel == "punct":
        span.pop(0)
    while span and sent.token_at(span[-1]).deprel == "punct":
        span.pop()
    if strip_that and span and sent.token_at(span[0]).form.lower() == "that":
        span.pop(0)
    if not span:
        return None
    if not any(sent.token_at(i).upos in CLAUSE_VERB_UPOS for i in span):
        return None
    subjects = [
        t
        for t in sent.children(head.index)
        if t.deprel == "nsubj" and t.upos in NOMINAL_UPOS and t.index in span
    ]
    if not subjects:
        return None
    subject = noun_phrase_at(sent, min(subjects, key=lambda t: t.index))
    forms = tuple(sent.token_at(i).form for i in span)
    surface = tuple(f.lower() for f in forms)
    return Clause(
        surface=surface,
        forms=forms,
        subject=subject,
        subject_is_prefix=surface[: len(subject.surface)] == subject.surface,
        source_sentence=sent.id,
    )


def extract_clause_bank(corpus: Iterable[ParsedSentence]) -> ClauseBank:
    """Collect every root clause and every ``ccomp`` clause with a nominal subject.

    A clause-initial complementizer "that" is stripped from complement clauses;
    edge punctuation is trimmed. Clauses with no token tagged VERB or AUX are
    rejected (no predicate).
    """
    bank: ClauseBank = []
    for sent in corpus:
        heads = [(sent.root, False)]
        heads += [(t, True) for t in sent.tokens if t.deprel == "ccomp"]
        for head, is_ccomp in heads:
            clause = _clause_at(sent, head, strip_that=is_ccomp)
            if clause is not None:
                bank.append(clause)
    return bank


# --- JSONL serialization -----------------------------------------------------


def np_to_dict(np: NounPhrase) -> dict:
    return {
        "surface": list(np.surface),
        "forms": list(np.forms),
        "head_lemma": np.head_lemma,
        "source_sentence": np.source_sentence,
        "span": list(np.span),
    }


def np_from_dict(d: dict) -> NounPhrase:
    return NounPhrase(
        surface=tuple(d["surface"]),
        forms=tuple(d["forms"]),
        head_lemma=d["head_lemma"],
        source_sentence=d["source_sentence"],
        span=tuple(d["span"]),
    )


def clause_to_dict(clause: Clause) -> dict:
    return {
        "surface": list(clause.surface),
        "forms": list(clause.forms),
        "subject": np_to_dict(clause.subject),
        "subject_is_prefix": clause.subject_is_prefix,
        "source_sentence": clause.source_sentence,
    }


def clause_from_dict(d: dict) -> Clause:
    return Clause(
        surface=tuple(d["surface"]),
        forms=tuple(d["forms"]),
        subject=np_from_dict(d["subject"]),
        subject_is_prefix=d["subject_is_prefix"],
        source_sentence=d["source_sentence"],
    )


def write_np_index(index: dict[str, set[NounPhrase]], path: str, meta: dict | None = None) -> None:
    records = []
    for verb in sorted(index):
        for np in sorted(index[verb], key=lambda n: (n.surface, n.source_sentence, n.span)):
            records.append({"verb": verb, **np_to_dict(np)})
    write_jsonl(path, records, meta=meta)


def read_np_index(path: str) -> dict[str, set[NounPhrase]]:
    index: dict[str, set[NounPhrase]] = {}
    for rec in iter_jsonl(path):
        index.setdefault(rec["verb"], set()).add(np_from_dict(rec))
    return index


def write_clause_bank(bank: ClauseBank, path: str, meta: dict | None = None) -> None:
    ordered = sorted(bank, key=lambda c: (c.surface, c.source_sentence))
    write_jsonl(path, [clause_to_dict(c) for c in ordered], meta=meta)


def read_clause_bank(path: str) -> ClauseBank:
    return [clause_from_dict(rec) for rec in iter_jsonl(path)]
