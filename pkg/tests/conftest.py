import pathlib

import pytest

from eventmine.conllu import parse_conllu
from eventmine.connectives import default_lexicon
from eventmine.instructions import load_templates

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def fixture_book():
    with open(DATA / "fixture_book.conllu", encoding="utf-8") as f:
        (doc,) = parse_conllu(f, source="fixture_book.conllu", strict=True)
    return doc


@pytest.fixture(scope="session")
def patterns_doc():
    with open(DATA / "structure_patterns.conllu", encoding="utf-8") as f:
        (doc,) = parse_conllu(f, source="structure_patterns.conllu", strict=True)
    return doc


@pytest.fixture(scope="session")
def lexicon():
    return default_lexicon()


@pytest.fixture(scope="session")
def bank():
    return load_templates()
