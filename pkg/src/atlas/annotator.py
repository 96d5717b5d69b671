"""Conceptual and thematic annotation of documents.

Concept detection is a greedy longest-match scan over the token stream:
at every position the longest label or synonym token sequence starting
there counts one occurrence and the scan advances past it. Pertinence
is the occurrence count divided by the document's maximum count, so it
always lies in (0, 1] and is invariant under scaling all frequencies.
Theme weights roll each concept's pertinence up to its root theme and
normalize across roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from .corpus import DocumentRecord, TokenStream
from .errors import ContractError, ValidationError
from .ontology import Ontology
from .text import token_seq

if TYPE_CHECKING:
    from .association import AssociationIndex

DEFAULT_SUMMARY_CONCEPTS = 10


@dataclass(frozen=True)
class ConceptAnnotation:
    concept_id: str
    frequency: int
    pertinence: float


@dataclass(frozen=True)
class ThemeWeight:
    theme_id: str
    weight: float


@dataclass(frozen=True)
class AnnotationSet:
    doc_id: str
    concepts: tuple[ConceptAnnotation, ...]  # pertinence desc, then concept_id asc
    major_theme: str | None
    minor_themes: tuple[str, ...]
    theme_weights: tuple[ThemeWeight, ...]


@dataclass(frozen=True)
class SummaryConcept:
    concept_id: str
    label: str
    pertinence: float


@dataclass(frozen=True)
class SummaryTheme:
    theme_id: str
    label: str
    weight: float


@dataclass(frozen=True)
class SummaryPair:
    concept_a: str
    concept_b: str
    degree: float


@dataclass(frozen=True)
class DocumentSummary:
    """Semantic summary of one document: descriptive fields, key concepts,
    thematic composition, and the document's own cooccurrence pairs."""

    doc_id: str
    title: str
    authors: tuple[str, ...]
    pub_date: str | None
    format: str
    size_bytes: int
    abstract: str | None
    keywords: tuple[str, ...]
    key_concepts: tuple[SummaryConcept, ...]
    major_theme: str | None
    minor_themes: tuple[str, ...]
    themes: tuple[SummaryTheme, ...]
    cooccurrence: tuple[SummaryPair, ...]


class ConceptMatcher:
    """Gazetteer over an ontology's labels and synonyms.

    Surfaces are tokenized with the same rules as documents (including
    stopword removal) so sequences line up with token streams. Two
    concepts tokenizing to the same sequence would make matching
    ambiguous, so that is rejected here rather than tie-broken later.
    """

    def __init__(self, ont: Ontology, stopwords: frozenset[str] = frozenset()) -> None:
        self._table: dict[tuple[str, ...], str] = {}
        for concept in ont.concepts.values():
            for surface in (concept.preferred_label, *concept.synonyms):
                seq = token_seq(surface, stopwords)
                if not seq:
                    continue
                claimed = self._table.get(seq)
                if claimed is not None and claimed != concept.id:
                    raise ValidationError(
                        f"concepts {claimed!r} and {concept.id!r} share the "
                        f"token sequence {' '.join(seq)!r}"
                    )
                self._table[seq] = concept.id
        self._max_len = max((len(seq) for seq in self._table), default=0)

    def annotate(self, stream: TokenStream) -> list[ConceptAnnotation]:
        """Greedy longest-match scan; see module docstring for the policy."""
        tokens = tuple(surface for surface, _ in stream.tokens)
        frequencies: dict[str, int] = {}
        i = 0
        n = len(tokens)
        while i < n:
            matched = 0
            for length in range(min(self._max_len, n - i), 0, -1):
                concept_id = self._table.get(tokens[i : i + length])
                if concept_id is not None:
                    frequencies[concept_id] = frequencies.get(concept_id, 0) + 1
                    matched = length
                    break
            i += matched if matched else 1
        if not frequencies:
            return []
        max_freq = max(frequencies.values())
        annotations = [
            ConceptAnnotation(concept_id=cid, frequency=freq, pertinence=freq / max_freq)
            for cid, freq in frequencies.items()
        ]
        annotations.sort(key=lambda a: (-a.pertinence, a.concept_id))
        return annotations

    def concepts_in(self, tokens: tuple[str, ...]) -> set[str]:
        """Concept ids whose sequence occurs anywhere in ``tokens``."""
        found: set[str] = set()
        n = len(tokens)
        for i in range(n):
            for length in range(1, min(self._max_len, n - i) + 1):
                concept_id = self._table.get(tokens[i : i + length])
                if concept_id is not None:
                    found.add(concept_id)
        return found


def annotate_concepts(
    stream: TokenStream, ont: Ontology, stopwords: frozenset[str] = frozenset()
) -> list[ConceptAnnotation]:
    """One-shot concept annotation; builds a matcher per call."""
    return ConceptMatcher(ont, stopwords).annotate(stream)


def annotate_themes(
    concepts: list[ConceptAnnotation] | tuple[ConceptAnnotation, ...], ont: Ontology
) -> tuple[str | None, tuple[str, ...], tuple[ThemeWeight, ...]]:
    """Roll pertinences up to root themes and normalize.

    Returns (major theme, minor themes, weights). The major theme is the
    argmax weight with ties going to the lexicographically smallest
    theme id; minors are the remaining positive-weight themes in
    descending weight order. No concepts means no themes at all.
    """
    contributions: dict[str, float] = {}
    for annotation in concepts:
        concept = ont.concept(annotation.concept_id)
        root = ont.root_theme_of(concept.theme_id)
        contributions[root.id] = contributions.get(root.id, 0.0) + annotation.pertinence
    total = sum(contributions.values())
    if total <= 0.0:
        return None, (), ()
    weights = tuple(
        ThemeWeight(theme_id=tid, weight=value / total)
        for tid, value in sorted(contributions.items(), key=lambda kv: (-kv[1], kv[0]))
    )
    major = weights[0].theme_id
    minors = tuple(w.theme_id for w in weights[1:])
    return major, minors, weights


def build_annotation_set(
    stream: TokenStream, ont: Ontology, matcher: ConceptMatcher
) -> AnnotationSet:
    """Full per-document annotation: concepts plus thematic composition."""
    concepts = matcher.annotate(stream)
    major, minors, weights = annotate_themes(concepts, ont)
    return AnnotationSet(
        doc_id=stream.doc_id,
        concepts=tuple(concepts),
        major_theme=major,
        minor_themes=minors,
        theme_weights=weights,
    )


def build_summary(
    record: DocumentRecord,
    ann: AnnotationSet,
    assoc: "AssociationIndex",
    ont: Ontology,
    top_k: int = DEFAULT_SUMMARY_CONCEPTS,
) -> DocumentSummary:
    """Bundle descriptive, conceptual, and thematic annotations for one document.

    Key concepts are the top ``top_k`` by pertinence; the cooccurrence
    block lists the association edges between those concepts, i.e. the
    document's own sub-hypergraph of the corpus-wide index.
    """
    if record.doc_id != ann.doc_id:
        raise ContractError(
            f"annotation set for {ann.doc_id!r} does not belong to document {record.doc_id!r}"
        )
    key = ann.concepts[:top_k]
    key_concepts = tuple(
        SummaryConcept(
            concept_id=a.concept_id,
            label=ont.concept(a.concept_id).preferred_label,
            pertinence=a.pertinence,
        )
        for a in key
    )
    pairs = []
    key_ids = sorted(a.concept_id for a in key)
    for i, a in enumerate(key_ids):
        for b in key_ids[i + 1 :]:
            edge = assoc.edge_between(a, b)
            if edge is not None:
                pairs.append(SummaryPair(concept_a=a, concept_b=b, degree=edge.degree))
    themes = tuple(
        SummaryTheme(theme_id=w.theme_id, label=_theme_display_label(ann, w.theme_id, ont), weight=w.weight)
        for w in ann.theme_weights
    )
    return DocumentSummary(
        doc_id=record.doc_id,
        title=record.title,
        authors=record.authors,
        pub_date=record.pub_date,
        format=record.format,
        size_bytes=record.size_bytes,
        abstract=record.abstract,
        keywords=record.keywords,
        key_concepts=key_concepts,
        major_theme=ann.major_theme,
        minor_themes=ann.minor_themes,
        themes=themes,
        cooccurrence=tuple(pairs),
    )


def _theme_display_label(ann: AnnotationSet, root_id: str, ont: Ontology) -> str:
    """Root label plus the dominant subtheme under it, e.g. "Security: Cryptography".

    The dominant subtheme is the child of the root whose subtree received
    the largest pertinence contribution; concepts owned directly by the
    root contribute to a blank group, which wins only without any
    subtheme contribution.
    """
    by_subtheme: dict[str | None, float] = {}
    for annotation in ann.concepts:
        concept = ont.concept(annotation.concept_id)
        chain = [concept.theme_id]
        while ont.themes[chain[-1]].parent_id is not None:
            chain.append(ont.themes[chain[-1]].parent_id)  # type: ignore[arg-type]
        if chain[-1] != root_id:
            continue
        subtheme = chain[-2] if len(chain) >= 2 else None
        by_subtheme[subtheme] = by_subtheme.get(subtheme, 0.0) + annotation.pertinence
    root_label = ont.themes[root_id].label
    if not by_subtheme:
        return root_label
    dominant = min(by_subtheme.items(), key=lambda kv: (-kv[1], kv[0] or ""))[0]
    if dominant is None:
        return root_label
    return f"{root_label}: {ont.themes[dominant].label}"
