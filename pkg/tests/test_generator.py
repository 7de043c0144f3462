import pytest

from npschallenge.corpus import NegationLexicon, tokenize_plain
from npschallenge.extraction import Clause, NounPhrase
from npschallenge.generator import (
    GenerationConfig,
    check_subsequence,
    generate_candidates,
    pair_from_dict,
    pair_to_dict,
    read_pairs,
    render,
    sample_set,
    strip_negation,
    write_pairs,
)

from helpers import make_pair


def _padded_run_oracle(premise: str, hypothesis: str) -> bool:
    """Independent containment check: space-padded substring over token strings."""
    prem = tokenize_plain(premise)
    hyp = tokenize_plain(hypothesis)
    if prem and prem[-1] == ".":
        prem = prem[:-1]
    if hyp and hyp[-1] == ".":
        hyp = hyp[:-1]
    return f" {' '.join(hyp)} " in f" {' '.join(prem)} "


def test_toy_corpus_generates_exactly_the_worked_example(toy_corpus):
    from npschallenge.extraction import (
        extract_clause_bank,
        extract_subject_verb,
        extract_verb_object,
    )

    sv = extract_subject_verb(toy_corpus)
    vo = extract_verb_object(toy_corpus)
    bank = extract_clause_bank(toy_corpus)
    cfg = GenerationConfig(verbs=[("believe", "believed")])
    pairs = generate_candidates(sv, vo, bank, cfg)
    assert len(pairs) == 1
    pair = pairs[0]
    assert pair.premise == "The Knights believed the story was awful."
    assert pair.hypothesis == "The Knights believed the story."
    assert pair.gold == "non-entailment"
    assert not pair.premise_has_negation
    assert pair.np1.text == "the knights"
    assert pair.np2.text == "the story"
    assert pair.np2 == pair.s1.subject
    assert pair.provenance.subject == "mnli-6a"
    assert pair.provenance.object == "mnli-6b"
    assert pair.provenance.clause == "mnli-6c"


def test_empty_clause_bank_gives_no_candidates(toy_corpus):
    from npschallenge.extraction import extract_subject_verb, extract_verb_object

    sv = extract_subject_verb(toy_corpus)
    vo = extract_verb_object(toy_corpus)
    cfg = GenerationConfig(verbs=[("believe", "believed")])
    assert generate_candidates(sv, vo, [], cfg) == []


def test_unmatched_clause_subject_gives_no_candidates(toy_corpus):
    from npschallenge.extraction import extract_clause_bank, extract_subject_verb

    sv = extract_subject_verb(toy_corpus)
    bank = extract_clause_bank(toy_corpus)
    cfg = GenerationConfig(verbs=[("believe", "believed")])
    # no object index at all: constraint (ii) can never be satisfied
    assert generate_candidates(sv, {}, bank, cfg) == []


def test_degenerate_single_np_clause_rejected():
    np1 = NounPhrase(surface=("the", "judge"), forms=("the", "judge"),
                     head_lemma="judge", source_sentence="a", span=(1, 2))
    obj = NounPhrase(surface=("the", "story"), forms=("the", "story"),
                     head_lemma="story", source_sentence="b", span=(1, 2))
    bare = Clause(surface=("the", "story"), forms=("the", "story"),
                  subject=obj, subject_is_prefix=True, source_sentence="c")
    cfg = GenerationConfig(verbs=[("believe", "believed")])
    pairs = generate_candidates({"believe": {np1}}, {"believe": {obj}}, [bare], cfg)
    assert pairs == []


def test_check_subsequence_paper_examples():
    assert check_subsequence("John likes Baltimore a lot.", "John likes Baltimore.")
    assert check_subsequence("Alice believes Mary is lying.", "Alice believes Mary.")
    assert check_subsequence("Roses are red, and violets are blue", "Violets are blue")


def test_check_subsequence_rejects_scattered_tokens():
    premise, hypothesis = "The book on the table is blue.", "The blue table."
    assert _padded_run_oracle(premise, hypothesis) is False
    assert check_subsequence(premise, hypothesis) is False


def test_check_subsequence_matches_oracle_on_generated(synthetic_candidates):
    for pair in synthetic_candidates[:200]:
        assert check_subsequence(pair.premise, pair.hypothesis) == _padded_run_oracle(
            pair.premise, pair.hypothesis
        )


def test_strip_negation_worked_examples():
    pair = make_pair("t1", "They heard the tapes are of no importance.", "They heard the tapes.")
    stripped = strip_negation(pair)
    assert stripped.premise == "They heard the tapes are of importance."
    assert stripped.hypothesis == "They heard the tapes."
    assert stripped.variant == "no_negation"
    assert stripped.id == "t1-noneg"
    assert not stripped.premise_has_negation

    pair2 = make_pair(
        "t2",
        "The young American believed the statistician is not involved.",
        "The young American believed the statistician.",
    )
    stripped2 = strip_negation(pair2)
    assert stripped2.premise == "The young American believed the statistician is involved."


def test_strip_negation_passthrough_without_negation():
    pair = make_pair("t3", "Alice believes Mary is lying.", "Alice believes Mary.")
    stripped = strip_negation(pair)
    assert stripped.premise == pair.premise
    assert stripped.hypothesis == pair.hypothesis
    assert stripped.variant == "no_negation"
    assert stripped.id == "t3-noneg"


def test_strip_negation_recapitalizes_initial_word():
    pair = make_pair("t4", "No reporters believed the story was fake.", "No reporters believed the story.")
    stripped = strip_negation(pair)
    assert stripped.premise == "Reporters believed the story was fake."
    assert stripped.hypothesis == "Reporters believed the story."


def test_strip_negation_requires_original_variant():
    pair = make_pair("t5", "A b.", "A.", variant="no_negation")
    with pytest.raises(ValueError):
        strip_negation(pair)


def test_strip_negation_clears_custom_lexicon_words():
    lex = NegationLexicon(frozenset({"hardly"}))
    pair = make_pair("t6", "They hardly slept.", "They slept.")
    assert strip_negation(pair, lex).premise == "They slept."


def test_render_examples():
    assert render(["the", "knights", "believed", "the", "story"]) == "The knights believed the story."
    assert render(["x"]) == "X."
    assert (
        render(["they", "claimed", "the", "cinema", "is", "in", "a", "steel", "sphere"])
        == "They claimed the cinema is in a steel sphere."
    )
    with pytest.raises(ValueError):
        render([])


def test_sample_returns_all_when_population_small(synthetic_candidates):
    few = synthetic_candidates[:5]
    sampled = sample_set(few, 200, seed=1)
    assert len(sampled) == 5
    assert [p.id for p in sampled] == ["nps-0001", "nps-0002", "nps-0003", "nps-0004", "nps-0005"]


def test_sample_is_deterministic(synthetic_candidates):
    a = sample_set(synthetic_candidates, 200, seed=42)
    b = sample_set(synthetic_candidates, 200, seed=42)
    assert [p.premise for p in a] == [p.premise for p in b]
    assert [p.id for p in a] == [p.id for p in b]


def test_sample_seeds_differ(synthetic_candidates):
    assert len(synthetic_candidates) >= 1000
    a = sample_set(synthetic_candidates, 200, seed=1)
    b = sample_set(synthetic_candidates, 200, seed=2)
    assert len(a) == len(b) == 200
    overlap = {p.premise for p in a} & {p.premise for p in b}
    assert len(overlap) < 200


def test_sample_rejects_nonpositive_n(synthetic_candidates):
    with pytest.raises(ValueError):
        sample_set(synthetic_candidates, 0, seed=1)


def test_generated_pairs_satisfy_subsequence_invariant(synthetic_candidates):
    assert len(synthetic_candidates) >= 1000
    for pair in synthetic_candidates:
        assert check_subsequence(pair.premise, pair.hypothesis)


def test_generated_hypothesis_is_proper_prefix_crossing_clause(synthetic_candidates):
    for pair in synthetic_candidates:
        prem = tokenize_plain(pair.premise)[:-1]
        hyp = tokenize_plain(pair.hypothesis)[:-1]
        assert hyp == prem[: len(hyp)]
        assert len(hyp) < len(prem)  # not the full premise
        assert hyp != list(pair.s1.surface)  # not S1 itself
        expected = list(pair.np1.surface) + [pair.verb_form] + list(pair.np2.surface)
        assert hyp == expected


def test_pair_jsonl_roundtrip(tmp_path, synthetic_candidates):
    path = str(tmp_path / "pairs.jsonl")
    subset = synthetic_candidates[:25]
    write_pairs(subset, path, meta={"seed": 0})
    assert read_pairs(path) == subset


def test_pair_dict_roundtrip(synthetic_candidates):
    pair = synthetic_candidates[0]
    assert pair_from_dict(pair_to_dict(pair)) == pair
