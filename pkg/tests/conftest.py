import json
from pathlib import Path

import pytest

from lexguard.kg.documents import parse_legislation
from lexguard.kg.store import KGStore
from lexguard.llm.backends import MockBackend, load_script
from lexguard.prompting.template import build_template
from lexguard.service.pipeline import GuardrailPipeline

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def finance_doc():
    return parse_legislation((FIXTURES / "finance-act-2023.json").read_bytes())


@pytest.fixture
def finance_doc_citing_s85():
    """Finance act variant where s82(1)(b) also cites the (absent) s85."""
    raw = json.loads((FIXTURES / "finance-act-2023.json").read_text("utf-8"))
    for fragment in raw["fragments"]:
        if fragment["id"].endswith("/section/82/1/b"):
            fragment["cites"].append("gb/finance-no2-act/2023/part/2/chapter/5/section/85")
    return parse_legislation(json.dumps(raw).encode("utf-8"))


@pytest.fixture
def s85_doc():
    return parse_legislation((FIXTURES / "finance-act-2023-s85.json").read_bytes())


@pytest.fixture
def identity_doc():
    return parse_legislation((FIXTURES / "identity-documents-act-2010.json").read_bytes())


@pytest.fixture
def finance_store(finance_doc) -> KGStore:
    store = KGStore()
    store.ingest(finance_doc)
    return store


@pytest.fixture
def full_store(finance_doc, identity_doc) -> KGStore:
    store = KGStore()
    store.ingest(finance_doc)
    store.ingest(identity_doc)
    return store


@pytest.fixture
def mock_backend() -> MockBackend:
    return MockBackend(load_script(FIXTURES / "mock-script.json"))


@pytest.fixture
def finance_pipeline(finance_store, mock_backend) -> GuardrailPipeline:
    return GuardrailPipeline(
        store=finance_store, template=build_template(), backend=mock_backend
    )


@pytest.fixture
def full_pipeline(full_store, mock_backend) -> GuardrailPipeline:
    return GuardrailPipeline(
        store=full_store, template=build_template(), backend=mock_backend
    )


S82_1 = "gb/finance-no2-act/2023/part/2/chapter/5/section/82/1"
S82_1A = "gb/finance-no2-act/2023/part/2/chapter/5/section/82/1/a"
S82_1B = "gb/finance-no2-act/2023/part/2/chapter/5/section/82/1/b"
S84 = "gb/finance-no2-act/2023/part/2/chapter/5/section/84"
S85 = "gb/finance-no2-act/2023/part/2/chapter/5/section/85"
