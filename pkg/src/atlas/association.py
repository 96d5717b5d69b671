"""Inverted index and concept association network built from annotations.

The association degree between two concepts is the Jaccard ratio of
their posting document sets, so it lies in (0, 1] and pairs that never
co-occur are simply absent. Every stored pair also carries the shared
documents, each weighted by pair relevance: the arithmetic mean of the
document's pertinence for the two concepts. Construction is insensitive
to input ordering; after the build the index is frozen and safe for
concurrent reads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .annotator import AnnotationSet
from .errors import ContractError, InvalidArgumentError, NotFoundError

DEFAULT_MAX_NEIGHBORS = 12


@dataclass(frozen=True)
class InvertedIndex:
    """Concept key -> (doc_id, pertinence) postings, pertinence desc then doc asc."""

    postings: dict[str, tuple[tuple[str, float], ...]]

    def documents_for(self, concept_id: str) -> tuple[tuple[str, float], ...]:
        return self.postings.get(concept_id, ())


@dataclass(frozen=True)
class AssociationEdge:
    concept_a: str  # lexicographically smaller key
    concept_b: str
    degree: float
    pair_docs: tuple[tuple[str, float], ...]  # (doc_id, pair relevance), relevance desc


@dataclass(frozen=True)
class AssociationIndex:
    edges: dict[tuple[str, str], AssociationEdge]
    concept_ids: frozenset[str] = field(compare=False)
    by_concept: dict[str, tuple[tuple[str, str], ...]] = field(compare=False, repr=False)

    @classmethod
    def from_edges(
        cls, edges: dict[tuple[str, str], AssociationEdge], concept_ids: frozenset[str]
    ) -> "AssociationIndex":
        return cls(edges=edges, concept_ids=concept_ids, by_concept=_group_by_concept(edges))

    def edge_between(self, a: str, b: str) -> AssociationEdge | None:
        if a == b:
            raise InvalidArgumentError(f"self-association is undefined: {a!r}")
        return self.edges.get((min(a, b), max(a, b)))

    def neighbors_of(self, concept_id: str) -> tuple[tuple[str, str], ...]:
        return self.by_concept.get(concept_id, ())


@dataclass(frozen=True)
class HypergraphNeighbor:
    concept_id: str
    degree: float
    pair_docs: tuple[tuple[str, float], ...]


@dataclass(frozen=True)
class HypergraphView:
    """Two-level association view: a center, its neighbors, their shared docs."""

    center: str
    neighbors: tuple[HypergraphNeighbor, ...]


def build_association_index(
    annotations: list[AnnotationSet] | tuple[AnnotationSet, ...],
    concept_ids: frozenset[str] | None = None,
) -> tuple[InvertedIndex, AssociationIndex]:
    """Build postings and association edges from per-document annotations.

    ``concept_ids`` is the universe of valid concepts (normally all
    ontology concepts); it defaults to the concepts actually seen.
    Output is deterministic regardless of the order of ``annotations``.
    """
    pertinence: dict[tuple[str, str], float] = {}
    doc_sets: dict[str, set[str]] = {}
    seen_docs: set[str] = set()
    for ann in annotations:
        if ann.doc_id in seen_docs:
            raise ContractError(f"duplicate doc_id across annotation sets: {ann.doc_id!r}")
        seen_docs.add(ann.doc_id)
        for a in ann.concepts:
            pertinence[(a.concept_id, ann.doc_id)] = a.pertinence
            doc_sets.setdefault(a.concept_id, set()).add(ann.doc_id)

    postings = {
        cid: tuple(
            sorted(
                ((doc, pertinence[(cid, doc)]) for doc in docs),
                key=lambda item: (-item[1], item[0]),
            )
        )
        for cid, docs in sorted(doc_sets.items())
    }

    edges: dict[tuple[str, str], AssociationEdge] = {}
    for a, b in combinations(sorted(doc_sets), 2):
        shared = doc_sets[a] & doc_sets[b]
        if not shared:
            continue
        union = len(doc_sets[a]) + len(doc_sets[b]) - len(shared)
        pair_docs = tuple(
            sorted(
                (
                    (doc, (pertinence[(a, doc)] + pertinence[(b, doc)]) / 2.0)
                    for doc in shared
                ),
                key=lambda item: (-item[1], item[0]),
            )
        )
        edges[(a, b)] = AssociationEdge(
            concept_a=a, concept_b=b, degree=len(shared) / union, pair_docs=pair_docs
        )

    universe = concept_ids if concept_ids is not None else frozenset(doc_sets)
    return InvertedIndex(postings=postings), AssociationIndex.from_edges(edges, universe)


def association_degree(idx: AssociationIndex, a: str, b: str) -> float | None:
    """Degree of the (a, b) pair, or None when they never co-occur. Symmetric."""
    edge = idx.edge_between(a, b)
    return edge.degree if edge is not None else None


def concept_hypergraph(
    idx: AssociationIndex, center: str, max_neighbors: int = DEFAULT_MAX_NEIGHBORS
) -> HypergraphView:
    """The two-level association view around ``center``.

    Level one holds the top ``max_neighbors`` associated concepts by
    degree; level two the documents indexed by each pair. A concept
    with no associations yields a view with only the center.
    """
    if max_neighbors < 1:
        raise InvalidArgumentError("max_neighbors must be at least 1")
    if center not in idx.concept_ids:
        raise NotFoundError(f"unknown concept: {center!r}")
    neighbors = []
    for key in idx.neighbors_of(center)[:max_neighbors]:
        edge = idx.edges[key]
        other = edge.concept_b if edge.concept_a == center else edge.concept_a
        neighbors.append(
            HypergraphNeighbor(concept_id=other, degree=edge.degree, pair_docs=edge.pair_docs)
        )
    return HypergraphView(center=center, neighbors=tuple(neighbors))


def _group_by_concept(
    edges: dict[tuple[str, str], AssociationEdge]
) -> dict[str, tuple[tuple[str, str], ...]]:
    grouped: dict[str, list[tuple[str, str]]] = {}
    for key in edges:
        grouped.setdefault(key[0], []).append(key)
        grouped.setdefault(key[1], []).append(key)

    def neighbor(concept: str, key: tuple[str, str]) -> str:
        return key[1] if key[0] == concept else key[0]

    return {
        concept: tuple(
            sorted(keys, key=lambda k: (-edges[k].degree, neighbor(concept, k)))
        )
        for concept, keys in sorted(grouped.items())
    }
