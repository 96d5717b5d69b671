import json

import jsonschema
import pytest

from atlas.errors import InvalidArgumentError
from atlas.server import ServerConfig


def check(schemas, name, payload):
    jsonschema.validate(payload, schemas[name])


def assert_valid_graph(payload):
    ids = {node["id"] for node in payload["nodes"]}
    assert payload["focus"] in ids
    assert len(ids) == len(payload["nodes"])
    levels = {node["level"] for node in payload["nodes"]}
    assert levels == set(range(max(levels) + 1))
    for edge in payload["edges"]:
        assert edge["from"] in ids and edge["to"] in ids
    for node in payload["nodes"]:
        assert node["x"] ** 2 + node["y"] ** 2 <= 1.0 + 1e-9


def test_root_themes_endpoint(client, schemas, ontology):
    response = client.get("/api/themes")
    assert response.status_code == 200
    payload = response.json()
    check(schemas, "graph_view", payload)
    assert_valid_graph(payload)
    assert [n["id"] for n in payload["nodes"]] == list(ontology.root_ids)


def test_theme_endpoint(client, schemas):
    payload = client.get("/api/themes/artificial_intelligence").json()
    check(schemas, "graph_view", payload)
    assert_valid_graph(payload)
    assert payload["focus"] == "artificial_intelligence"
    kinds = {n["id"]: n["kind"] for n in payload["nodes"]}
    assert kinds["expert_applications"] == "theme"


def test_unknown_theme_is_404(client, schemas):
    response = client.get("/api/themes/nope")
    assert response.status_code == 404
    check(schemas, "error", response.json())


def test_concept_endpoint(client, schemas):
    response = client.get("/api/concepts/multi_agent_system")
    payload = response.json()
    check(schemas, "graph_view", payload)
    assert_valid_graph(payload)
    documents = [n for n in payload["nodes"] if n["kind"] == "document"]
    assert documents and all(n["level"] == 1 for n in documents)


def test_concept_documents_endpoint(client, schemas, snapshot):
    response = client.get("/api/concepts/multi_agent_system/documents")
    payload = response.json()
    check(schemas, "concept_documents", payload)
    postings = snapshot.inverted.postings["multi_agent_system"]
    assert [d["doc_id"] for d in payload["documents"]] == [doc for doc, _ in postings]
    assert [d["pertinence"] for d in payload["documents"]] == [p for _, p in postings]


def test_concept_associations_endpoint(client, schemas):
    payload = client.get("/api/concepts/multi_agent_system/associations").json()
    check(schemas, "graph_view", payload)
    assert_valid_graph(payload)
    by_level = {}
    for node in payload["nodes"]:
        by_level.setdefault(node["level"], []).append(node)
    assert set(by_level) == {0, 1, 2}
    assert {n["kind"] for n in by_level[1]} == {"concept"}
    assert {n["kind"] for n in by_level[2]} == {"document"}
    # Degree labels on ring one use two decimals, relevance three.
    ring_one_ids = {n["id"] for n in by_level[1]}
    for edge in payload["edges"]:
        if edge["to"] in ring_one_ids:
            assert len(edge["label"].split(".")[1]) == 2
        else:
            assert len(edge["label"].split(".")[1]) == 3


def test_association_documents_endpoint(client, schemas, snapshot):
    response = client.get(
        "/api/associations/multi_agent_system/authentication/documents"
    )
    payload = response.json()
    check(schemas, "association_documents", payload)
    assert payload["concept_a"] == "authentication"
    assert payload["concept_b"] == "multi_agent_system"
    edge = snapshot.association.edge_between("multi_agent_system", "authentication")
    assert payload["degree"] == edge.degree
    assert len(payload["documents"]) == 3


def test_association_documents_empty_pair(client, schemas):
    payload = client.get(
        "/api/associations/relational_database/mobile_agent/documents"
    ).json()
    check(schemas, "association_documents", payload)
    assert payload["degree"] is None
    assert payload["documents"] == []


def test_association_self_pair_is_400(client, schemas):
    response = client.get("/api/associations/encryption/encryption/documents")
    assert response.status_code == 400
    check(schemas, "error", response.json())


def test_association_unknown_concept_is_404(client):
    assert client.get("/api/associations/encryption/ghost/documents").status_code == 404


def test_document_detail_endpoint(client, schemas):
    response = client.get("/api/documents/d01_mobile_agent_security.txt")
    payload = response.json()
    check(schemas, "document_detail", payload)
    summary = payload["summary"]
    assert summary["title"] == "A security solution for mobile agents"
    assert summary["major_theme"] == "artificial_intelligence"
    assert summary["key_concepts"][0]["pertinence"] == 1.0
    assert summary["cooccurrence"]
    assert payload["similar"]


def test_document_detail_degenerate(client, schemas):
    payload = client.get("/api/documents/d12_meeting_notes.txt").json()
    check(schemas, "document_detail", payload)
    assert payload["summary"]["key_concepts"] == []
    assert payload["summary"]["major_theme"] is None
    assert payload["similar"] == []


def test_document_similar_endpoint(client, schemas):
    payload = client.get("/api/documents/d01_mobile_agent_security.txt/similar").json()
    check(schemas, "similar_documents", payload)
    scores = [entry["score"] for entry in payload["similar"]]
    assert scores == sorted(scores, reverse=True)


def test_unknown_document_is_404(client, schemas):
    for url in ("/api/documents/ghost.txt", "/api/documents/ghost.txt/similar"):
        response = client.get(url)
        assert response.status_code == 404
        check(schemas, "error", response.json())


def test_search_endpoint(client, schemas, navigator):
    response = client.get("/api/search", params={"q": "mobile agents"})
    payload = response.json()
    check(schemas, "search_results", payload)
    expected = navigator.precise_search("mobile agents")
    assert [r["doc_id"] for r in payload["results"]] == [doc for doc, _ in expected]


def test_search_empty_query_is_400(client, schemas):
    for params in ({}, {"q": ""}, {"q": "   "}):
        response = client.get("/api/search", params=params)
        assert response.status_code == 400
        check(schemas, "error", response.json())


def test_trail_roundtrip(client, schemas):
    session = "test-session-1"
    for kind, focus in (
        ("thematic", "security"),
        ("connotative", "encryption"),
    ):
        response = client.post(f"/api/trail/{session}", json={"kind": kind, "focus": focus})
        assert response.status_code == 200
        check(schemas, "trail", response.json())
    payload = client.get(f"/api/trail/{session}").json()
    check(schemas, "trail", payload)
    assert [(s["kind"], s["focus"]) for s in payload["steps"]] == [
        ("thematic", "security"),
        ("connotative", "encryption"),
    ]


def test_trail_unknown_session_is_404(client, schemas):
    response = client.get("/api/trail/never-seen")
    assert response.status_code == 404
    check(schemas, "error", response.json())


def test_trail_bad_body_is_400(client, schemas):
    response = client.post("/api/trail/s", json={"kind": "thematic"})
    assert response.status_code == 400
    check(schemas, "error", response.json())
    response = client.post("/api/trail/s", content=b"not json")
    assert response.status_code == 400


def test_responses_are_canonical_json(client):
    raw = client.get("/api/themes").content.decode("utf-8")
    parsed = json.loads(raw)
    assert raw == json.dumps(
        parsed, sort_keys=True, separators=(",", ":"), ensure_ascii=False
    )


def test_config_validation():
    with pytest.raises(InvalidArgumentError):
        ServerConfig(distortion=-1)
    with pytest.raises(InvalidArgumentError):
        ServerConfig(similarity_threshold=2.0)
    with pytest.raises(InvalidArgumentError):
        ServerConfig(top_k=0)
    with pytest.raises(InvalidArgumentError):
        ServerConfig(port=0)


def test_distortion_zero_keeps_radial_positions(snapshot):
    from fastapi.testclient import TestClient

    from atlas.server import create_app

    flat_client = TestClient(create_app(snapshot, ServerConfig(distortion=0.0)))
    payload = flat_client.get("/api/concepts/multi_agent_system/associations").json()
    radii = {
        node["level"]: (node["x"] ** 2 + node["y"] ** 2) ** 0.5
        for node in payload["nodes"]
    }
    assert radii[0] == pytest.approx(0.0, abs=1e-12)
    assert radii[1] == pytest.approx(0.5, abs=1e-12)
    assert radii[2] == pytest.approx(1.0, abs=1e-12)
