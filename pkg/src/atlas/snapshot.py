"""Snapshot: the frozen result of indexing, persisted as canonical JSON.

Canonical means sorted object keys and no insignificant whitespace, so
identical inputs always produce byte-identical files and a saved
snapshot re-serializes to exactly the same bytes after loading. The
stopword list travels inside the snapshot because query tokenization at
serve time must match the tokenization used at index time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .annotator import (
    AnnotationSet,
    ConceptAnnotation,
    ConceptMatcher,
    ThemeWeight,
    build_annotation_set,
)
from .association import (
    AssociationEdge,
    AssociationIndex,
    InvertedIndex,
    build_association_index,
)
from .corpus import DocumentRecord, tokenize
from .errors import ContractError, SnapshotError
from .ontology import Ontology, ontology_from_payload, ontology_to_payload
from .similarity import (
    DEFAULT_THRESHOLD,
    SimilarityEdge,
    SimilarityGraph,
    build_similarity_graph,
)

SNAPSHOT_VERSION = 1


@dataclass(frozen=True)
class Snapshot:
    version: int
    ontology: Ontology
    documents: tuple[DocumentRecord, ...]  # sorted by doc_id
    annotations: tuple[AnnotationSet, ...]  # sorted by doc_id
    inverted: InvertedIndex
    association: AssociationIndex
    similarity: SimilarityGraph
    stopwords: frozenset[str]


def build_snapshot(
    ontology: Ontology,
    records: list[DocumentRecord] | tuple[DocumentRecord, ...],
    stopwords: frozenset[str] = frozenset(),
    similarity_threshold: float = DEFAULT_THRESHOLD,
) -> Snapshot:
    """Run the full indexing pipeline over parsed inputs.

    Deterministic: documents are processed in doc id order regardless of
    the order given, and every serialized collection is canonically
    ordered.
    """
    ordered = sorted(records, key=lambda r: r.doc_id)
    seen: set[str] = set()
    for record in ordered:
        if record.doc_id in seen:
            raise ContractError(f"duplicate doc_id in corpus: {record.doc_id!r}")
        seen.add(record.doc_id)
    reserved = seen & (set(ontology.themes) | set(ontology.concepts))
    if reserved:
        raise ContractError(
            f"doc ids collide with ontology ids: {sorted(reserved)}"
        )

    matcher = ConceptMatcher(ontology, stopwords)
    annotations = tuple(
        build_annotation_set(tokenize(record, stopwords), ontology, matcher)
        for record in ordered
    )
    inverted, association = build_association_index(
        annotations, concept_ids=frozenset(ontology.concepts)
    )
    similarity = build_similarity_graph(annotations, threshold=similarity_threshold)
    return Snapshot(
        version=SNAPSHOT_VERSION,
        ontology=ontology,
        documents=tuple(ordered),
        annotations=annotations,
        inverted=inverted,
        association=association,
        similarity=similarity,
        stopwords=stopwords,
    )


def canonical_dumps(payload: object) -> str:
    """Deterministic JSON text: sorted keys, compact separators, strict floats."""
    return json.dumps(
        payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False, allow_nan=False
    )


def snapshot_to_payload(snap: Snapshot) -> dict:
    return {
        "version": snap.version,
        "ontology": ontology_to_payload(snap.ontology),
        "documents": [
            {
                "doc_id": r.doc_id,
                "title": r.title,
                "authors": list(r.authors),
                "pub_date": r.pub_date,
                "format": r.format,
                "size_bytes": r.size_bytes,
                "abstract": r.abstract,
                "keywords": list(r.keywords),
                "body": r.body,
            }
            for r in snap.documents
        ],
        "annotations": [
            {
                "doc_id": a.doc_id,
                "concepts": [
                    {
                        "concept_id": c.concept_id,
                        "frequency": c.frequency,
                        "pertinence": c.pertinence,
                    }
                    for c in a.concepts
                ],
                "major_theme": a.major_theme,
                "minor_themes": list(a.minor_themes),
                "theme_weights": [
                    {"theme_id": w.theme_id, "weight": w.weight} for w in a.theme_weights
                ],
            }
            for a in snap.annotations
        ],
        "association": {
            "postings": {
                cid: [[doc, pertinence] for doc, pertinence in docs]
                for cid, docs in snap.inverted.postings.items()
            },
            "edges": [
                {
                    "concept_a": e.concept_a,
                    "concept_b": e.concept_b,
                    "degree": e.degree,
                    "pair_docs": [[doc, rel] for doc, rel in e.pair_docs],
                }
                for _, e in sorted(snap.association.edges.items())
            ],
        },
        "similarity": {
            "threshold": snap.similarity.threshold,
            "edges": [
                {"doc_a": e.doc_a, "doc_b": e.doc_b, "score": e.score}
                for e in snap.similarity.edges
            ],
        },
        "stopwords": sorted(snap.stopwords),
    }


def snapshot_from_payload(payload: object) -> Snapshot:
    if not isinstance(payload, dict):
        raise SnapshotError("snapshot must be a JSON object")
    version = payload.get("version")
    if version != SNAPSHOT_VERSION:
        raise SnapshotError(
            f"unsupported snapshot version {version!r} (expected {SNAPSHOT_VERSION})"
        )
    try:
        ontology = ontology_from_payload(payload["ontology"])
        documents = tuple(
            DocumentRecord(
                doc_id=obj["doc_id"],
                title=obj["title"],
                authors=tuple(obj["authors"]),
                pub_date=obj["pub_date"],
                format=obj["format"],
                size_bytes=obj["size_bytes"],
                abstract=obj["abstract"],
                keywords=tuple(obj["keywords"]),
                body=obj["body"],
            )
            for obj in payload["documents"]
        )
        annotations = tuple(
            AnnotationSet(
                doc_id=obj["doc_id"],
                concepts=tuple(
                    ConceptAnnotation(
                        concept_id=c["concept_id"],
                        frequency=c["frequency"],
                        pertinence=c["pertinence"],
                    )
                    for c in obj["concepts"]
                ),
                major_theme=obj["major_theme"],
                minor_themes=tuple(obj["minor_themes"]),
                theme_weights=tuple(
                    ThemeWeight(theme_id=w["theme_id"], weight=w["weight"])
                    for w in obj["theme_weights"]
                ),
            )
            for obj in payload["annotations"]
        )
        inverted = InvertedIndex(
            postings={
                cid: tuple((doc, pertinence) for doc, pertinence in docs)
                for cid, docs in payload["association"]["postings"].items()
            }
        )
        edges = {
            (obj["concept_a"], obj["concept_b"]): AssociationEdge(
                concept_a=obj["concept_a"],
                concept_b=obj["concept_b"],
                degree=obj["degree"],
                pair_docs=tuple((doc, rel) for doc, rel in obj["pair_docs"]),
            )
            for obj in payload["association"]["edges"]
        }
        association = AssociationIndex.from_edges(edges, frozenset(ontology.concepts))
        sim_edges = [
            SimilarityEdge(doc_a=obj["doc_a"], doc_b=obj["doc_b"], score=obj["score"])
            for obj in payload["similarity"]["edges"]
        ]
        similarity = SimilarityGraph.from_edges(
            sim_edges,
            payload["similarity"]["threshold"],
            frozenset(d.doc_id for d in documents),
        )
        stopwords = frozenset(payload["stopwords"])
    except (KeyError, TypeError) as exc:
        raise SnapshotError(f"corrupt snapshot payload: {exc}") from exc
    return Snapshot(
        version=version,
        ontology=ontology,
        documents=documents,
        annotations=annotations,
        inverted=inverted,
        association=association,
        similarity=similarity,
        stopwords=stopwords,
    )


def save_snapshot(snap: Snapshot, path: str | Path) -> None:
    Path(path).write_text(canonical_dumps(snapshot_to_payload(snap)), encoding="utf-8")


def load_snapshot(path: str | Path) -> Snapshot:
    text = Path(path).read_text(encoding="utf-8")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SnapshotError(f"snapshot is not valid JSON: {exc}") from exc
    return snapshot_from_payload(payload)
