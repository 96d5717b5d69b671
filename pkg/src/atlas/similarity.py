"""Document similarity graph over concept-pertinence vectors.

Similarity is the cosine of two documents' sparse pertinence vectors
indexed by concept id. The graph keeps the edges at or above a
threshold; neighbor queries can restrict further but never see edges
below the build threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .annotator import AnnotationSet
from .errors import InvalidArgumentError, NotFoundError

DEFAULT_THRESHOLD = 0.25
DEFAULT_TOP_K = 10


@dataclass(frozen=True)
class SimilarityEdge:
    doc_a: str  # lexicographically smaller key
    doc_b: str
    score: float


@dataclass(frozen=True)
class SimilarityGraph:
    edges: tuple[SimilarityEdge, ...]  # sorted by (doc_a, doc_b)
    threshold: float
    doc_ids: frozenset[str] = field(compare=False)
    neighbors: dict[str, tuple[tuple[str, float], ...]] = field(compare=False, repr=False)

    @classmethod
    def from_edges(
        cls, edges: list[SimilarityEdge], threshold: float, doc_ids: frozenset[str]
    ) -> "SimilarityGraph":
        return cls(
            edges=tuple(edges),
            threshold=threshold,
            doc_ids=doc_ids,
            neighbors=_neighbor_map(edges),
        )


def doc_similarity(ann_a: AnnotationSet, ann_b: AnnotationSet) -> float:
    """Cosine similarity of two documents' pertinence vectors; 0 if either is empty."""
    vec_a = {a.concept_id: a.pertinence for a in ann_a.concepts}
    vec_b = {a.concept_id: a.pertinence for a in ann_b.concepts}
    if not vec_a or not vec_b:
        return 0.0
    dot = sum(value * vec_b[cid] for cid, value in vec_a.items() if cid in vec_b)
    if dot == 0.0:
        return 0.0
    norm_a = math.sqrt(sum(v * v for v in vec_a.values()))
    norm_b = math.sqrt(sum(v * v for v in vec_b.values()))
    return dot / (norm_a * norm_b)


def build_similarity_graph(
    annotations: list[AnnotationSet] | tuple[AnnotationSet, ...],
    threshold: float = DEFAULT_THRESHOLD,
) -> SimilarityGraph:
    """All-pairs cosine over the corpus, keeping edges with score >= threshold."""
    if not 0.0 <= threshold <= 1.0:
        raise InvalidArgumentError("similarity threshold must lie in [0, 1]")
    by_id = {ann.doc_id: ann for ann in annotations}
    edges = []
    for a, b in combinations(sorted(by_id), 2):
        score = doc_similarity(by_id[a], by_id[b])
        if score > 0.0 and score >= threshold:
            edges.append(SimilarityEdge(doc_a=a, doc_b=b, score=score))
    return SimilarityGraph.from_edges(edges, threshold, frozenset(by_id))


def similar_documents(
    graph: SimilarityGraph,
    doc_id: str,
    k: int = DEFAULT_TOP_K,
    threshold: float | None = None,
) -> list[tuple[str, float]]:
    """Top-k most similar documents, score descending then doc id ascending."""
    if k < 1:
        raise InvalidArgumentError("k must be at least 1")
    if doc_id not in graph.doc_ids:
        raise NotFoundError(f"unknown document: {doc_id!r}")
    cutoff = graph.threshold if threshold is None else threshold
    ranked = [
        (other, score) for other, score in graph.neighbors.get(doc_id, ()) if score >= cutoff
    ]
    return ranked[:k]


def _neighbor_map(edges: list[SimilarityEdge]) -> dict[str, tuple[tuple[str, float], ...]]:
    grouped: dict[str, list[tuple[str, float]]] = {}
    for edge in edges:
        grouped.setdefault(edge.doc_a, []).append((edge.doc_b, edge.score))
        grouped.setdefault(edge.doc_b, []).append((edge.doc_a, edge.score))
    return {
        doc: tuple(sorted(pairs, key=lambda item: (-item[1], item[0])))
        for doc, pairs in sorted(grouped.items())
    }
