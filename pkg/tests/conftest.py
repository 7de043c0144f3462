from pathlib import Path

import pytest

from npschallenge.corpus import parse_conllu
from npschallenge.extraction import extract_clause_bank, extract_subject_verb, extract_verb_object
from npschallenge.generator import GenerationConfig, generate_candidates

from helpers import VERBS, synthetic_conllu

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def toy_corpus_path() -> str:
    return str(DATA_DIR / "toy_6abc.conllu")


@pytest.fixture(scope="session")
def toy_corpus(toy_corpus_path):
    with open(toy_corpus_path, encoding="utf-8") as f:
        return parse_conllu(f)


@pytest.fixture(scope="session")
def synthetic_corpus_text() -> str:
    return synthetic_conllu()


@pytest.fixture(scope="session")
def synthetic_corpus(synthetic_corpus_text):
    return parse_conllu(synthetic_corpus_text)


@pytest.fixture(scope="session")
def synthetic_indexes(synthetic_corpus):
    return (
        extract_subject_verb(synthetic_corpus),
        extract_verb_object(synthetic_corpus),
        extract_clause_bank(synthetic_corpus),
    )


@pytest.fixture(scope="session")
def synthetic_candidates(synthetic_indexes):
    sv, vo, bank = synthetic_indexes
    cfg = GenerationConfig(verbs=list(VERBS))
    return generate_candidates(sv, vo, bank, cfg)
