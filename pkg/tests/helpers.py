"""Shared test utilities: a synthetic corpus builder and quick pair construction."""

from npschallenge.corpus import NegationLexicon, tokenize_plain
from npschallenge.extraction import Clause, NounPhrase
from npschallenge.generator import ChallengePair, Provenance

VERBS = [("hear", "heard"), ("believe", "believed"), ("feel", "felt"), ("claim", "claimed")]

SUBJECT_NOUNS = [
    "lawyer", "critic", "farmer", "banker", "doctor",
    "artist", "singer", "teacher", "miner", "actor",
]
OBJECT_NOUNS = ["tape", "story", "report", "rumor", "motive", "signal"]
ADJECTIVES = ["long", "fake", "loud", "old", "strange", "dull"]


def _svo_block(sent_id, subj, verb_form, verb_lemma, obj):
    lines = [f"# sent_id = {sent_id}"]
    rows = [
        (1, "The", "the", "DET", 2, "det"),
        (2, subj, subj, "NOUN", 3, "nsubj"),
        (3, verb_form, verb_lemma, "VERB", 0, "root"),
        (4, "the", "the", "DET", 5, "det"),
        (5, obj, obj, "NOUN", 3, "obj"),
        (6, ".", ".", "PUNCT", 3, "punct"),
    ]
    for idx, form, lemma, upos, head, rel in rows:
        lines.append(f"{idx}\t{form}\t{lemma}\t{upos}\t_\t_\t{head}\t{rel}\t_\t_")
    return "\n".join(lines)


def _copular_block(sent_id, noun, middle, pred):
    """"The <noun> [middle tokens] was ... <pred>." with <pred> as copular head."""
    rows = [
        (1, "The", "the", "DET", 2, "det"),
        (2, noun, noun, "NOUN", None, "nsubj"),
        (3, "was", "be", "AUX", None, "cop"),
    ]
    for form, lemma, upos, rel in middle:
        rows.append((len(rows) + 1, form, lemma, upos, None, rel))
    head_idx = len(rows) + 1
    rows.append((head_idx, pred[0], pred[1], pred[2], 0, "root"))
    rows.append((head_idx + 1, ".", ".", "PUNCT", head_idx, "punct"))
    lines = [f"# sent_id = {sent_id}"]
    for idx, form, lemma, upos, head, rel in rows:
        head = head_idx if head is None else head
        lines.append(f"{idx}\t{form}\t{lemma}\t{upos}\t_\t_\t{head}\t{rel}\t_\t_")
    return "\n".join(lines)


def synthetic_conllu() -> str:
    """A corpus attesting 10 subjects and 6 objects per verb, plus 30 copular clauses.

    Yields 4 * 10 * 30 = 1200 template candidates, 480 of them with a negation
    word in the clause.
    """
    blocks = []
    n = 0
    for _, (lemma, form) in enumerate(VERBS):
        for i, subj in enumerate(SUBJECT_NOUNS):
            n += 1
            obj = OBJECT_NOUNS[i % len(OBJECT_NOUNS)]
            blocks.append(_svo_block(f"syn-{n:03d}", subj, form, lemma, obj))
    for j, obj in enumerate(OBJECT_NOUNS):
        adj = ADJECTIVES[j % len(ADJECTIVES)]
        adj2 = ADJECTIVES[(j + 1) % len(ADJECTIVES)]
        adj3 = ADJECTIVES[(j + 2) % len(ADJECTIVES)]
        specs = [
            ([], (adj, adj, "ADJ")),
            ([("quite", "quite", "ADV", "advmod")], (adj2, adj2, "ADJ")),
            ([("not", "not", "PART", "advmod")], (adj3, adj3, "ADJ")),
            ([("of", "of", "ADP", "case"), ("no", "no", "DET", "det")],
             ("importance", "importance", "NOUN")),
            ([("never", "never", "ADV", "advmod")], (adj, adj, "ADJ")),
        ]
        for k, (middle, pred) in enumerate(specs):
            n += 1
            blocks.append(_copular_block(f"syn-{n:03d}", obj, middle, pred))
    return "\n\n".join(blocks) + "\n"


def make_pair(
    pair_id: str,
    premise: str,
    hypothesis: str,
    variant: str = "original",
    gold: str = "non-entailment",
) -> ChallengePair:
    """A ChallengePair with placeholder template metadata, for text-level tests."""
    lexicon = NegationLexicon()
    np = NounPhrase(surface=("x",), forms=("x",), head_lemma="x",
                    source_sentence="test", span=(1, 1))
    clause = Clause(surface=("x", "y"), forms=("x", "y"), subject=np,
                    subject_is_prefix=True, source_sentence="test")
    return ChallengePair(
        id=pair_id,
        premise=premise,
        hypothesis=hypothesis,
        gold=gold,
        np1=np,
        verb_lemma="x",
        verb_form="x",
        s1=clause,
        np2=np,
        variant=variant,
        premise_has_negation=any(t in lexicon for t in tokenize_plain(premise)),
        provenance=Provenance(subject="test", object="test", clause="test"),
    )
