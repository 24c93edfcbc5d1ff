import sys
from dataclasses import dataclass
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import fixture
from feverpipe.corpus import FileCorpus, ingest_dump


@dataclass
class FixturePaths:
    dump: Path
    claims: Path
    store: Path


@pytest.fixture(scope="session")
def fixture_paths(tmp_path_factory) -> FixturePaths:
    """The bundled corpus dump, claims file, and a built store."""
    root = tmp_path_factory.mktemp("fever-fixture")
    dump = root / "wiki.jsonl"
    claims = root / "claims.jsonl"
    fixture.write_dump(dump)
    fixture.write_claims(claims)
    store = root / "store"
    ingest_dump(dump, store)
    return FixturePaths(dump=dump, claims=claims, store=store)


@pytest.fixture(scope="session")
def fixture_corpus(fixture_paths) -> FileCorpus:
    corpus = FileCorpus(fixture_paths.store)
    yield corpus
    corpus.close()
