"""HTTP API over a frozen snapshot.

All state is read-only except the per-session navigation trails. Graph
endpoints return views with fisheye layout points already applied, so
clients can draw them directly; responses are canonical JSON (sorted
keys). Unknown resources map to 404, bad arguments to 400, and internal
invariant breaches to 500 after logging.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import AtlasError, InvalidArgumentError, NotFoundError
from .layout import DEFAULT_DISTORTION, LaidOutView, fisheye_distort, radial_layout
from .navigation import (
    GraphView,
    NavigationParams,
    NavigationTrail,
    Navigator,
    TrailStore,
)
from .snapshot import Snapshot, canonical_dumps

log = logging.getLogger("atlas.server")


@dataclass(frozen=True)
class ServerConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    distortion: float = DEFAULT_DISTORTION
    similarity_threshold: float | None = None  # None keeps the snapshot's threshold
    top_k: int = 10
    max_neighbors: int = 12

    def __post_init__(self) -> None:
        if self.distortion < 0:
            raise InvalidArgumentError("distortion must be non-negative")
        if self.similarity_threshold is not None and not 0.0 <= self.similarity_threshold <= 1.0:
            raise InvalidArgumentError("similarity threshold must lie in [0, 1]")
        if self.top_k < 1:
            raise InvalidArgumentError("k must be at least 1")
        if self.max_neighbors < 1:
            raise InvalidArgumentError("max_neighbors must be at least 1")
        if not 0 < self.port < 65536:
            raise InvalidArgumentError("port must lie in [1, 65535]")


class CanonicalJSONResponse(JSONResponse):
    def render(self, content: Any) -> bytes:
        return canonical_dumps(content).encode("utf-8")


def create_app(snapshot: Snapshot, config: ServerConfig = ServerConfig()) -> FastAPI:
    navigator = Navigator(
        ontology=snapshot.ontology,
        records=snapshot.documents,
        annotations=snapshot.annotations,
        inverted=snapshot.inverted,
        association=snapshot.association,
        similarity=snapshot.similarity,
        stopwords=snapshot.stopwords,
        params=NavigationParams(
            top_k=config.top_k,
            max_neighbors=config.max_neighbors,
            similarity_threshold=config.similarity_threshold,
        ),
    )
    trails = TrailStore()
    app = FastAPI(title="atlas", default_response_class=CanonicalJSONResponse)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    def graph_payload(view: GraphView) -> dict:
        view.validate()
        laid = fisheye_distort(radial_layout(view), config.distortion)
        return laid_out_payload(laid)

    @app.exception_handler(NotFoundError)
    async def not_found(_: Request, exc: NotFoundError) -> JSONResponse:
        return CanonicalJSONResponse({"error": str(exc)}, status_code=404)

    @app.exception_handler(InvalidArgumentError)
    async def bad_argument(_: Request, exc: InvalidArgumentError) -> JSONResponse:
        return CanonicalJSONResponse({"error": str(exc)}, status_code=400)

    @app.exception_handler(RequestValidationError)
    async def malformed(_: Request, exc: RequestValidationError) -> JSONResponse:
        return CanonicalJSONResponse({"error": "malformed request"}, status_code=400)

    @app.exception_handler(AtlasError)
    async def internal(_: Request, exc: AtlasError) -> JSONResponse:
        log.error("internal invariant breach: %s", exc)
        return CanonicalJSONResponse({"error": str(exc)}, status_code=500)

    @app.get("/api/themes")
    def themes_root() -> dict:
        return graph_payload(navigator.root_view())

    @app.get("/api/themes/{theme_id}")
    def theme_view(theme_id: str) -> dict:
        if theme_id not in navigator.ontology.themes:
            raise NotFoundError(f"unknown theme: {theme_id!r}")
        return graph_payload(navigator.thematic_view(theme_id))

    @app.get("/api/concepts/{concept_id}")
    def concept_view(concept_id: str) -> dict:
        if concept_id not in navigator.ontology.concepts:
            raise NotFoundError(f"unknown concept: {concept_id!r}")
        return graph_payload(navigator.thematic_view(concept_id))

    @app.get("/api/concepts/{concept_id}/documents")
    def concept_documents(concept_id: str) -> dict:
        concept = navigator.ontology.concept(concept_id)
        return {
            "concept": concept.id,
            "label": concept.preferred_label,
            "documents": [
                {
                    "doc_id": doc_id,
                    "title": navigator.records[doc_id].title,
                    "pertinence": pertinence,
                }
                for doc_id, pertinence in navigator.inverted.documents_for(concept_id)
            ],
        }

    @app.get("/api/concepts/{concept_id}/associations")
    def concept_associations(concept_id: str) -> dict:
        return graph_payload(navigator.connotative_view(concept_id))

    @app.get("/api/associations/{concept_a}/{concept_b}/documents")
    def association_documents(concept_a: str, concept_b: str) -> dict:
        navigator.ontology.concept(concept_a)
        navigator.ontology.concept(concept_b)
        edge = navigator.association.edge_between(concept_a, concept_b)
        return {
            "concept_a": min(concept_a, concept_b),
            "concept_b": max(concept_a, concept_b),
            "degree": edge.degree if edge is not None else None,
            "documents": [
                {
                    "doc_id": doc_id,
                    "title": navigator.records[doc_id].title,
                    "pair_relevance": relevance,
                }
                for doc_id, relevance in (edge.pair_docs if edge is not None else ())
            ],
        }

    @app.get("/api/documents/{doc_id:path}/similar")
    def document_similar(doc_id: str) -> dict:
        navigator.record(doc_id)
        return {
            "doc_id": doc_id,
            "similar": [
                {
                    "doc_id": other,
                    "title": navigator.records[other].title,
                    "score": score,
                }
                for other, score in navigator.similar_to(doc_id)
            ],
        }

    @app.get("/api/documents/{doc_id:path}")
    def document_detail(doc_id: str) -> dict:
        summary, similar = navigator.document_detail(doc_id)
        return {
            "summary": {
                "doc_id": summary.doc_id,
                "title": summary.title,
                "authors": list(summary.authors),
                "pub_date": summary.pub_date,
                "format": summary.format,
                "size_bytes": summary.size_bytes,
                "abstract": summary.abstract,
                "keywords": list(summary.keywords),
                "key_concepts": [
                    {"concept_id": c.concept_id, "label": c.label, "pertinence": c.pertinence}
                    for c in summary.key_concepts
                ],
                "major_theme": summary.major_theme,
                "minor_themes": list(summary.minor_themes),
                "themes": [
                    {"theme_id": t.theme_id, "label": t.label, "weight": t.weight}
                    for t in summary.themes
                ],
                "cooccurrence": [
                    {"concept_a": p.concept_a, "concept_b": p.concept_b, "degree": p.degree}
                    for p in summary.cooccurrence
                ],
            },
            "similar": [
                {
                    "doc_id": other,
                    "title": navigator.records[other].title,
                    "score": score,
                }
                for other, score in similar
            ],
        }

    @app.get("/api/search")
    def search(q: str = "") -> dict:
        results = navigator.precise_search(q)
        return {
            "query": q,
            "results": [
                {
                    "doc_id": doc_id,
                    "title": navigator.records[doc_id].title,
                    "score": score,
                }
                for doc_id, score in results
            ],
        }

    @app.post("/api/trail/{session}")
    async def trail_append(session: str, request: Request) -> dict:
        try:
            body = await request.json()
        except Exception:
            raise InvalidArgumentError("trail step body must be JSON") from None
        if not isinstance(body, dict):
            raise InvalidArgumentError("trail step body must be an object")
        kind = body.get("kind")
        focus = body.get("focus")
        if not isinstance(kind, str) or not isinstance(focus, str):
            raise InvalidArgumentError("trail steps need string 'kind' and 'focus' fields")
        return trail_payload(trails.append(session, kind, focus))

    @app.get("/api/trail/{session}")
    def trail_read(session: str) -> dict:
        return trail_payload(trails.read(session))

    return app


def laid_out_payload(laid: LaidOutView) -> dict:
    points = {p.node_id: p for p in laid.points}
    return {
        "nodes": [
            {
                "id": node.id,
                "kind": node.kind,
                "label": node.label,
                "level": node.level,
                "x": points[node.id].x,
                "y": points[node.id].y,
            }
            for node in laid.view.nodes
        ],
        "edges": [
            {"from": edge.from_id, "to": edge.to_id, "label": edge.label}
            for edge in laid.view.edges
        ],
        "focus": laid.view.focus,
    }


def trail_payload(trail: NavigationTrail) -> dict:
    return {
        "session": trail.session,
        "steps": [
            {"kind": step.kind, "focus": step.focus, "timestamp": step.timestamp}
            for step in trail.steps
        ],
    }
