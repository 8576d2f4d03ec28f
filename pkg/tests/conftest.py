import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from netgen import corpus_documents, stress_document  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def corpus():
    return corpus_documents()


@pytest.fixture(scope="session")
def parsed_corpus(corpus):
    from mira import parse_json

    pairs = []
    for doc in corpus:
        snapshot, report = parse_json(json.dumps(doc))
        assert snapshot is not None, [i.to_json_dict() for i in report.errors][:3]
        pairs.append((doc, snapshot))
    return pairs


@pytest.fixture(scope="session")
def stress_doc():
    return stress_document()


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


def load_fixture(name: str):
    from mira import parse_json

    snapshot, report = parse_json((FIXTURES / "valid" / name).read_bytes())
    assert snapshot is not None, [i.to_json_dict() for i in report.errors]
    return snapshot
