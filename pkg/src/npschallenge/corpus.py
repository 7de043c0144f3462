"""CoNLL-U corpus ingestion, plain-text tokenization, and the negation lexicon."""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Iterable, Iterator

# Words treated as negation cues unless a lexicon file overrides them.
DEFAULT_NEGATION_WORDS = frozenset(
    {"no", "not", "n't", "never", "none", "nothing", "nobody", "nowhere", "neither", "nor"}
)

# Trailing punctuation detached by tokenize_plain.
_DETACHED_PUNCT = {".", ",", "!", "?"}


class CorpusFormatError(ValueError):
    """Malformed CoNLL-U input or a sentence violating a structural invariant."""


@dataclass(frozen=True)
class Token:
    """One syntactic word of a dependency-parsed sentence."""

    index: int
    form: str
    lemma: str
    upos: str
    head: int
    deprel: str

    def __post_init__(self):
        if self.index < 1:
            raise CorpusFormatError(f"token index must be >= 1, got {self.index}")
        if self.head < 0:
            raise CorpusFormatError(f"token head must be >= 0, got {self.head}")
        if self.head == self.index:
            raise CorpusFormatError(f"token {self.index} has itself as head")
        if not self.form:
            raise CorpusFormatError(f"token {self.index} has an empty form")


@dataclass(frozen=True)
class ParsedSentence:
    """A dependency-parsed sentence with a single root token."""

    id: str
    tokens: tuple[Token, ...]

    def __post_init__(self):
        roots = [t for t in self.tokens if t.head == 0]
        if len(roots) != 1:
            raise CorpusFormatError(
                f"sentence {self.id!r} has {len(roots)} root tokens, expected exactly 1"
            )
        valid = {t.index for t in self.tokens}
        for t in self.tokens:
            if t.head != 0 and t.head not in valid:
                raise CorpusFormatError(
                    f"sentence {self.id!r}: token {t.index} points to nonexistent head {t.head}"
                )

    @property
    def root(self) -> Token:
        return next(t for t in self.tokens if t.head == 0)

    def token_at(self, index: int) -> Token:
        return self.tokens[index - 1]

    def children(self, head_index: int) -> list[Token]:
        return [t for t in self.tokens if t.head == head_index]

    def subtree_indices(self, head_index: int) -> set[int]:
        """All token indices dominated by ``head_index``, inclusive."""
        out = {head_index}
        frontier = [head_index]
        while frontier:
            nxt = [t.index for t in self.tokens if t.head in frontier and t.index not in out]
            out.update(nxt)
            frontier = nxt
        return out


@dataclass(frozen=True)
class NegationLexicon:
    """Case-insensitive membership set of negation word forms."""

    entries: frozenset[str] = field(default_factory=lambda: DEFAULT_NEGATION_WORDS)

    def __post_init__(self):
        if not self.entries:
            raise ValueError("negation lexicon must be non-empty")
        if any(w != w.lower() for w in self.entries):
            raise ValueError("negation lexicon entries must be lowercase")

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.entries


def is_negation(token: str, lexicon: NegationLexicon | None = None) -> bool:
    """True iff the lowercased token is in the negation lexicon."""
    if lexicon is None:
        lexicon = NegationLexicon()
    return token in lexicon


def load_negation_lexicon(path: str) -> NegationLexicon:
    """Read a lexicon file: one word per line, ``#`` comments and blanks ignored."""
    words = set()
    with open(path, encoding="utf-8") as f:
        for line in f:
            word = line.strip()
            if not word or word.startswith("#"):
                continue
            words.add(word.lower())
    return NegationLexicon(frozenset(words))


def tokenize_cased(text: str) -> list[str]:
    """Whitespace tokenization with trailing-punctuation and n't detachment.

    Casing is preserved; ``tokenize_plain`` is the lowercased variant used for
    all matching.
    """
    tokens: list[str] = []
    for chunk in text.split():
        trailing: list[str] = []
        while len(chunk) > 1 and chunk[-1] in _DETACHED_PUNCT:
            trailing.append(chunk[-1])
            chunk = chunk[:-1]
        trailing.reverse()
        if len(chunk) > 3 and chunk[-3:].lower() == "n't":
            tokens.append(chunk[:-3])
            tokens.append(chunk[-3:])
        else:
            tokens.append(chunk)
        tokens.extend(trailing)
    return tokens


def tokenize_plain(text: str) -> list[str]:
    """Deterministic lowercase tokenization shared by all matching code."""
    return [t.lower() for t in tokenize_cased(text)]


def _iter_lines(source: str | io.TextIOBase | Iterable[str]) -> Iterator[str]:
    if isinstance(source, str):
        return iter(source.splitlines())
    return iter(source)


def parse_conllu(source: str | io.TextIOBase | Iterable[str]) -> list[ParsedSentence]:
    """Parse CoNLL-U text into sentences.

    Multiword-token ranges (``1-2``) and empty nodes (``1.1``) are skipped.
    Sentence ids come from ``# sent_id =`` comments when present, otherwise a
    running counter ``s1``, ``s2``, ...
    """
    sentences: list[ParsedSentence] = []
    pending: list[Token] = []
    pending_id: str | None = None
    counter = 0

    def flush():
        nonlocal pending, pending_id, counter
        if not pending:
            pending_id = None
            return
        counter += 1
        sent_id = pending_id if pending_id is not None else f"s{counter}"
        sentences.append(ParsedSentence(id=sent_id, tokens=tuple(pending)))
        pending = []
        pending_id = None

    for lineno, raw in enumerate(_iter_lines(source), start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("sent_id") and "=" in body:
                pending_id = body.split("=", 1)[1].strip()
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise CorpusFormatError(
                f"line {lineno}: expected 10 tab-separated columns, got {len(cols)}"
            )
        tok_id = cols[0]
        if "-" in tok_id or "." in tok_id:
            continue  # multiword-token range or empty node
        try:
            index = int(tok_id)
        except ValueError:
            raise CorpusFormatError(f"line {lineno}: non-numeric token id {tok_id!r}") from None
        try:
            head = int(cols[6])
        except ValueError:
            raise CorpusFormatError(f"line {lineno}: non-numeric head {cols[6]!r}") from None
        try:
            pending.append(
                Token(
                    index=index,
                    form=cols[1],
                    lemma=cols[2].lower(),
                    upos=cols[3],
                    head=head,
                    deprel=cols[7],
                )
            )
        except CorpusFormatError as err:
            raise CorpusFormatError(f"line {lineno}: {err}") from None
    flush()
    return sentences


def to_conllu(sentences: Iterable[ParsedSentence]) -> str:
    """Serialize sentences back to CoNLL-U (unfilled columns as ``_``)."""
    blocks = []
    for sent in sentences:
        lines = [f"# sent_id = {sent.id}"]
        for t in sent.tokens:
            lines.append(
                "\t".join(
                    [str(t.index), t.form, t.lemma, t.upos, "_", "_", str(t.head), t.deprel, "_", "_"]
                )
            )
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")
