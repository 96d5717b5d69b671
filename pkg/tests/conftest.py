import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from atlas.corpus import load_corpus, load_stopwords
from atlas.navigation import NavigationParams, Navigator
from atlas.ontology import load_ontology
from atlas.server import ServerConfig, create_app
from atlas.snapshot import build_snapshot

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def ontology_path():
    return FIXTURES / "ontology.json"


@pytest.fixture(scope="session")
def corpus_dir():
    return FIXTURES / "corpus"


@pytest.fixture(scope="session")
def ontology(ontology_path):
    return load_ontology(ontology_path)


@pytest.fixture(scope="session")
def stopwords():
    return load_stopwords()


@pytest.fixture(scope="session")
def records(corpus_dir):
    return load_corpus(corpus_dir)


@pytest.fixture(scope="session")
def snapshot(ontology, records, stopwords):
    return build_snapshot(ontology, records, stopwords)


@pytest.fixture(scope="session")
def navigator(snapshot):
    return Navigator(
        ontology=snapshot.ontology,
        records=snapshot.documents,
        annotations=snapshot.annotations,
        inverted=snapshot.inverted,
        association=snapshot.association,
        similarity=snapshot.similarity,
        stopwords=snapshot.stopwords,
        params=NavigationParams(),
    )


@pytest.fixture(scope="session")
def client(snapshot):
    app = create_app(snapshot, ServerConfig())
    return TestClient(app, raise_server_exceptions=False)


@pytest.fixture(scope="session")
def schemas():
    from importlib import resources

    loaded = {}
    root = resources.files("atlas.schemas")
    for entry in root.iterdir():
        if entry.name.endswith(".schema.json"):
            loaded[entry.name.removesuffix(".schema.json")] = json.loads(
                entry.read_text("utf-8")
            )
    return loaded
