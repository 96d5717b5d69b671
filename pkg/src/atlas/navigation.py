"""The three search modes and the navigation trail over frozen indexes.

Every navigation answer is either a GraphView (typed nodes and edges
plus a focus, ready for layout) or a document payload. Thematic views
walk the ontology hierarchy down to pertinence-ordered document lists;
connotative views wrap the association hypergraph; precise search is a
classical ranked query. Trails are per-session append-only histories.

Edge labels are display strings: association degrees use two decimals
and relevance values three, matching the map rendering conventions.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .annotator import AnnotationSet, ConceptMatcher, DocumentSummary, build_summary
from .association import (
    DEFAULT_MAX_NEIGHBORS,
    AssociationIndex,
    InvertedIndex,
    concept_hypergraph,
)
from .corpus import DocumentRecord
from .errors import InvalidArgumentError, NotFoundError, ValidationError
from .ontology import Ontology, Theme
from .similarity import DEFAULT_TOP_K, SimilarityGraph, similar_documents
from .text import token_seq

NODE_KINDS = ("theme", "concept", "document")

# Delimiter for per-association document node instances; a document shown
# under two neighbors must be two distinct nodes.
INSTANCE_SEP = "::"

TRAIL_CAPACITY = 1000


def format_degree(value: float) -> str:
    return f"{value:.2f}"


def format_relevance(value: float) -> str:
    return f"{value:.3f}"


@dataclass(frozen=True)
class GraphNode:
    id: str
    kind: str
    label: str
    level: int


@dataclass(frozen=True)
class GraphEdge:
    from_id: str
    to_id: str
    label: str | None = None


@dataclass(frozen=True)
class GraphView:
    nodes: tuple[GraphNode, ...]
    edges: tuple[GraphEdge, ...]
    focus: str

    def validate(self) -> None:
        """Check referential integrity; raises ValidationError on breach."""
        ids = [node.id for node in self.nodes]
        id_set = set(ids)
        if len(ids) != len(id_set):
            raise ValidationError("duplicate node ids in view")
        if self.focus not in id_set:
            raise ValidationError(f"focus {self.focus!r} not among nodes")
        for node in self.nodes:
            if node.kind not in NODE_KINDS:
                raise ValidationError(f"unknown node kind: {node.kind!r}")
            if node.level < 0:
                raise ValidationError(f"negative level on node {node.id!r}")
        levels = {node.level for node in self.nodes}
        if levels != set(range(max(levels) + 1)):
            raise ValidationError(f"levels not contiguous from 0: {sorted(levels)}")
        for edge in self.edges:
            if edge.from_id not in id_set or edge.to_id not in id_set:
                raise ValidationError(
                    f"edge ({edge.from_id!r}, {edge.to_id!r}) references a missing node"
                )


@dataclass(frozen=True)
class TrailStep:
    kind: str
    focus: str
    timestamp: str


@dataclass(frozen=True)
class NavigationTrail:
    session: str
    steps: tuple[TrailStep, ...]


class TrailStore:
    """Per-session navigation histories.

    Sessions are opaque strings minted by clients, so appending to a new
    session establishes it; reading an unknown one is an error. Appends
    are serialized; the capacity cap drops the oldest steps.
    """

    def __init__(self, capacity: int = TRAIL_CAPACITY) -> None:
        self._capacity = capacity
        self._trails: dict[str, list[TrailStep]] = {}
        self._lock = threading.Lock()

    def append(self, session: str, kind: str, focus: str) -> NavigationTrail:
        if not session:
            raise InvalidArgumentError("session id must not be empty")
        if not kind or not focus:
            raise InvalidArgumentError("trail steps need both a kind and a focus")
        step = TrailStep(
            kind=kind, focus=focus, timestamp=datetime.now(timezone.utc).isoformat()
        )
        with self._lock:
            steps = self._trails.setdefault(session, [])
            steps.append(step)
            if len(steps) > self._capacity:
                del steps[: len(steps) - self._capacity]
            return NavigationTrail(session=session, steps=tuple(steps))

    def read(self, session: str) -> NavigationTrail:
        with self._lock:
            if session not in self._trails:
                raise NotFoundError(f"unknown session: {session!r}")
            return NavigationTrail(session=session, steps=tuple(self._trails[session]))


@dataclass(frozen=True)
class NavigationParams:
    top_k: int = DEFAULT_TOP_K
    max_neighbors: int = DEFAULT_MAX_NEIGHBORS
    similarity_threshold: float | None = None  # None keeps the graph's build threshold

    def __post_init__(self) -> None:
        if self.top_k < 1:
            raise InvalidArgumentError("k must be at least 1")
        if self.max_neighbors < 1:
            raise InvalidArgumentError("max_neighbors must be at least 1")
        if self.similarity_threshold is not None and not 0.0 <= self.similarity_threshold <= 1.0:
            raise InvalidArgumentError("similarity threshold must lie in [0, 1]")


class Navigator:
    """Read-only navigation facade over the frozen indexes."""

    def __init__(
        self,
        ontology: Ontology,
        records: list[DocumentRecord] | tuple[DocumentRecord, ...],
        annotations: list[AnnotationSet] | tuple[AnnotationSet, ...],
        inverted: InvertedIndex,
        association: AssociationIndex,
        similarity: SimilarityGraph,
        stopwords: frozenset[str] = frozenset(),
        params: NavigationParams = NavigationParams(),
    ) -> None:
        self.ontology = ontology
        self.records = {r.doc_id: r for r in records}
        self.annotations = {a.doc_id: a for a in annotations}
        self.inverted = inverted
        self.association = association
        self.similarity = similarity
        self.params = params
        self._matcher = ConceptMatcher(ontology, stopwords)
        self._stopwords = stopwords
        self._title_tokens = {
            r.doc_id: frozenset(token_seq(r.title)) for r in records
        }

    # -- thematic mode ------------------------------------------------------

    def root_view(self) -> GraphView:
        """Overview of the general themes: all root themes at level 0."""
        roots = [self.ontology.themes[tid] for tid in self.ontology.root_ids]
        if not roots:
            raise NotFoundError("ontology has no root themes")
        nodes = tuple(
            GraphNode(id=t.id, kind="theme", label=t.label, level=0) for t in roots
        )
        return GraphView(nodes=nodes, edges=(), focus=roots[0].id)

    def thematic_view(self, focus: str) -> GraphView:
        """View centered on a theme or a concept.

        A theme shows its parent, itself, its child themes and its own
        concepts; a concept shows its documents ordered by pertinence,
        with edges labeled by the pertinence degree.
        """
        if focus in self.ontology.themes:
            return self._theme_view(self.ontology.themes[focus])
        if focus in self.ontology.concepts:
            return self._concept_view(focus)
        raise NotFoundError(f"unknown theme or concept: {focus!r}")

    def _theme_view(self, theme: Theme) -> GraphView:
        nodes = [GraphNode(id=theme.id, kind="theme", label=theme.label, level=0)]
        edges = []
        if theme.parent_id is not None:
            parent = self.ontology.themes[theme.parent_id]
            nodes.append(GraphNode(id=parent.id, kind="theme", label=parent.label, level=1))
            edges.append(GraphEdge(from_id=theme.id, to_id=parent.id))
        for child_id in theme.child_theme_ids:
            child = self.ontology.themes[child_id]
            nodes.append(GraphNode(id=child.id, kind="theme", label=child.label, level=1))
            edges.append(GraphEdge(from_id=theme.id, to_id=child.id))
        for concept_id in theme.concept_ids:
            concept = self.ontology.concepts[concept_id]
            nodes.append(
                GraphNode(id=concept.id, kind="concept", label=concept.preferred_label, level=1)
            )
            edges.append(GraphEdge(from_id=theme.id, to_id=concept.id))
        return GraphView(nodes=tuple(nodes), edges=tuple(edges), focus=theme.id)

    def _concept_view(self, concept_id: str) -> GraphView:
        concept = self.ontology.concepts[concept_id]
        nodes = [
            GraphNode(id=concept.id, kind="concept", label=concept.preferred_label, level=0)
        ]
        edges = []
        for doc_id, pertinence in self.inverted.documents_for(concept_id):
            record = self.records[doc_id]
            nodes.append(GraphNode(id=doc_id, kind="document", label=record.title, level=1))
            edges.append(
                GraphEdge(
                    from_id=concept.id, to_id=doc_id, label=format_relevance(pertinence)
                )
            )
        return GraphView(nodes=tuple(nodes), edges=tuple(edges), focus=concept.id)

    # -- connotative mode ---------------------------------------------------

    def connotative_view(self, concept_id: str) -> GraphView:
        """Association hypergraph of a concept as a GraphView.

        Level 1 holds the associated concepts (degree labels, 2
        decimals); level 2 the documents indexed by each pair
        (relevance labels, 3 decimals). Documents are instance nodes
        per neighbor so a document indexed by two associations appears
        under both.
        """
        if concept_id not in self.ontology.concepts:
            raise NotFoundError(f"unknown concept: {concept_id!r}")
        hyper = concept_hypergraph(
            self.association, concept_id, max_neighbors=self.params.max_neighbors
        )
        center = self.ontology.concepts[concept_id]
        nodes = [GraphNode(id=center.id, kind="concept", label=center.preferred_label, level=0)]
        edges = []
        for neighbor in hyper.neighbors:
            other = self.ontology.concepts[neighbor.concept_id]
            nodes.append(
                GraphNode(id=other.id, kind="concept", label=other.preferred_label, level=1)
            )
            edges.append(
                GraphEdge(
                    from_id=center.id, to_id=other.id, label=format_degree(neighbor.degree)
                )
            )
            for doc_id, relevance in neighbor.pair_docs:
                instance = f"{other.id}{INSTANCE_SEP}{doc_id}"
                nodes.append(
                    GraphNode(
                        id=instance,
                        kind="document",
                        label=self.records[doc_id].title,
                        level=2,
                    )
                )
                edges.append(
                    GraphEdge(
                        from_id=other.id, to_id=instance, label=format_relevance(relevance)
                    )
                )
        return GraphView(nodes=tuple(nodes), edges=tuple(edges), focus=center.id)

    # -- precise mode -------------------------------------------------------

    def precise_search(self, query: str) -> list[tuple[str, float]]:
        """Classical ranked search over the annotated corpus.

        The query is tokenized like a document. Every distinct concept
        whose label or synonym sequence occurs in the query contributes
        its per-document pertinence; documents whose title contains
        every query token get a 0.5 bonus. Results with positive score
        come back score descending, doc id ascending.
        """
        if query.strip() == "":
            raise InvalidArgumentError("query must not be empty")
        tokens = token_seq(query, self._stopwords)
        scores: dict[str, float] = {}
        # Sorted so score accumulation order (and thus float rounding) is
        # reproducible across processes.
        for concept_id in sorted(self._matcher.concepts_in(tokens)):
            for doc_id, pertinence in self.inverted.documents_for(concept_id):
                scores[doc_id] = scores.get(doc_id, 0.0) + pertinence
        if tokens:
            for doc_id, title_tokens in self._title_tokens.items():
                if all(token in title_tokens for token in tokens):
                    scores[doc_id] = scores.get(doc_id, 0.0) + 0.5
        ranked = [(doc_id, score) for doc_id, score in scores.items() if score > 0.0]
        ranked.sort(key=lambda item: (-item[1], item[0]))
        return ranked

    # -- document payloads --------------------------------------------------

    def document_detail(self, doc_id: str) -> tuple[DocumentSummary, list[tuple[str, float]]]:
        """Semantic summary of one document plus its most similar documents."""
        if doc_id not in self.records:
            raise NotFoundError(f"unknown document: {doc_id!r}")
        summary = build_summary(
            self.records[doc_id],
            self.annotations[doc_id],
            self.association,
            self.ontology,
            top_k=self.params.top_k,
        )
        similar = self.similar_to(doc_id)
        return summary, similar

    def similar_to(self, doc_id: str) -> list[tuple[str, float]]:
        if doc_id not in self.records:
            raise NotFoundError(f"unknown document: {doc_id!r}")
        return similar_documents(
            self.similarity,
            doc_id,
            k=self.params.top_k,
            threshold=self.params.similarity_threshold,
        )

    def record(self, doc_id: str) -> DocumentRecord:
        if doc_id not in self.records:
            raise NotFoundError(f"unknown document: {doc_id!r}")
        return self.records[doc_id]
