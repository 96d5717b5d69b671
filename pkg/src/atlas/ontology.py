"""Domain ontology: a forest of themes owning subthemes and concepts.

The ontology arrives as a UTF-8 JSON document with top-level ``themes``
and ``concepts`` arrays. Theme objects carry ``id``, ``label``, optional
``parent_id``, ``children`` (theme ids) and ``concepts`` (concept ids);
concept objects carry ``id``, ``label`` and ``synonyms``. Parsing
validates every reference and rejects duplicate ids, dangling links,
hierarchy cycles, and ambiguous surface forms, so lookups never have to
tie-break at runtime. The parsed ontology is immutable and safe for
unrestricted concurrent reads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import NotFoundError, ParseError, ValidationError
from .text import normalize_surface

_THEME_KEYS = {"id", "label", "parent_id", "children", "concepts"}
_CONCEPT_KEYS = {"id", "label", "synonyms"}


@dataclass(frozen=True)
class Concept:
    id: str
    preferred_label: str
    synonyms: tuple[str, ...]
    theme_id: str


@dataclass(frozen=True)
class Theme:
    id: str
    label: str
    parent_id: str | None
    child_theme_ids: tuple[str, ...]
    concept_ids: tuple[str, ...]


@dataclass(frozen=True)
class Ontology:
    """Validated ontology; dict ordering preserves source order."""

    themes: dict[str, Theme]
    concepts: dict[str, Concept]
    root_ids: tuple[str, ...]
    surface_map: dict[str, str] = field(compare=False, repr=False)

    def theme(self, theme_id: str) -> Theme:
        try:
            return self.themes[theme_id]
        except KeyError:
            raise NotFoundError(f"unknown theme: {theme_id!r}") from None

    def concept(self, concept_id: str) -> Concept:
        try:
            return self.concepts[concept_id]
        except KeyError:
            raise NotFoundError(f"unknown concept: {concept_id!r}") from None

    def root_theme_of(self, theme_id: str) -> Theme:
        """Walk parent links from ``theme_id`` up to its root theme."""
        theme = self.theme(theme_id)
        while theme.parent_id is not None:
            theme = self.themes[theme.parent_id]
        return theme


def parse_ontology(source: str) -> Ontology:
    """Parse and validate an ontology from JSON text.

    Raises:
        ParseError: malformed JSON or a document that does not follow the
            file schema (wrong types, unknown fields, missing fields).
        ValidationError: duplicate ids, dangling references, hierarchy
            cycles, or two concepts claiming the same surface form.
    """
    try:
        payload = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    return _from_payload(payload)


def load_ontology(path: str | Path) -> Ontology:
    """Read ``path`` and parse it as an ontology document."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return parse_ontology(text)
    except ParseError as exc:
        raise ParseError(str(exc), path=str(path)) from exc


def serialize_ontology(ont: Ontology, *, indent: int | None = 2) -> str:
    """Render the ontology back to its file format, preserving source order."""
    return json.dumps(ontology_to_payload(ont), indent=indent, ensure_ascii=False, sort_keys=True)


def ontology_from_payload(payload: object) -> Ontology:
    """Validate an already-decoded ontology payload (see parse_ontology)."""
    return _from_payload(payload)


def ontology_to_payload(ont: Ontology) -> dict:
    themes = []
    for theme in ont.themes.values():
        obj: dict = {"id": theme.id, "label": theme.label}
        if theme.parent_id is not None:
            obj["parent_id"] = theme.parent_id
        obj["children"] = list(theme.child_theme_ids)
        obj["concepts"] = list(theme.concept_ids)
        themes.append(obj)
    concepts = [
        {"id": c.id, "label": c.preferred_label, "synonyms": list(c.synonyms)}
        for c in ont.concepts.values()
    ]
    return {"themes": themes, "concepts": concepts}


def concepts_of_theme(ont: Ontology, theme_id: str, recursive: bool = False) -> list[Concept]:
    """Concepts owned by a theme, optionally including its whole subtree.

    Non-recursive returns exactly the theme's own concepts in source
    order; recursive performs a depth-first walk (own concepts first,
    then each child subtree in order).
    """
    theme = ont.theme(theme_id)
    if not recursive:
        return [ont.concepts[cid] for cid in theme.concept_ids]
    out: list[Concept] = []
    stack = [theme]
    while stack:
        current = stack.pop()
        out.extend(ont.concepts[cid] for cid in current.concept_ids)
        # Reversed so children are visited in source order.
        stack.extend(ont.themes[tid] for tid in reversed(current.child_theme_ids))
    return out


def lookup_concept(ont: Ontology, surface: str) -> Concept | None:
    """Resolve a surface form to its concept, or None.

    Matching equals the preferred label or any synonym after case
    folding and whitespace normalization. Ambiguity is impossible here:
    conflicting surfaces are rejected when the ontology is parsed.
    """
    concept_id = ont.surface_map.get(normalize_surface(surface))
    return ont.concepts[concept_id] if concept_id is not None else None


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ParseError(message)


def _parse_themes(raw_themes: list) -> dict[str, dict]:
    themes: dict[str, dict] = {}
    for i, obj in enumerate(raw_themes):
        _require(isinstance(obj, dict), f"theme #{i} is not an object")
        unknown = set(obj) - _THEME_KEYS
        _require(not unknown, f"theme #{i} has unknown fields: {sorted(unknown)}")
        _require(isinstance(obj.get("id"), str) and obj["id"], f"theme #{i} needs a string id")
        tid = obj["id"]
        _require(
            isinstance(obj.get("label"), str) and obj["label"].strip() != "",
            f"theme {tid!r} needs a non-empty label",
        )
        parent = obj.get("parent_id")
        _require(
            parent is None or (isinstance(parent, str) and parent),
            f"theme {tid!r}: parent_id must be a non-empty string when present",
        )
        for key in ("children", "concepts"):
            value = obj.get(key, [])
            _require(
                isinstance(value, list) and all(isinstance(v, str) for v in value),
                f"theme {tid!r}: {key} must be an array of ids",
            )
        if tid in themes:
            raise ValidationError(f"duplicate theme id: {tid!r}")
        themes[tid] = obj
    return themes


def _parse_concepts(raw_concepts: list, theme_ids: set[str]) -> dict[str, dict]:
    concepts: dict[str, dict] = {}
    for i, obj in enumerate(raw_concepts):
        _require(isinstance(obj, dict), f"concept #{i} is not an object")
        unknown = set(obj) - _CONCEPT_KEYS
        _require(not unknown, f"concept #{i} has unknown fields: {sorted(unknown)}")
        _require(isinstance(obj.get("id"), str) and obj["id"], f"concept #{i} needs a string id")
        cid = obj["id"]
        _require(
            isinstance(obj.get("label"), str) and obj["label"].strip() != "",
            f"concept {cid!r} needs a non-empty label",
        )
        synonyms = obj.get("synonyms", [])
        _require(
            isinstance(synonyms, list) and all(isinstance(s, str) for s in synonyms),
            f"concept {cid!r}: synonyms must be an array of strings",
        )
        if cid in concepts:
            raise ValidationError(f"duplicate concept id: {cid!r}")
        if cid in theme_ids:
            raise ValidationError(f"id {cid!r} is used by both a theme and a concept")
        concepts[cid] = obj
    return concepts


def _from_payload(payload: object) -> Ontology:
    _require(isinstance(payload, dict), "top level must be an object")
    assert isinstance(payload, dict)
    unknown = set(payload) - {"themes", "concepts"}
    _require(not unknown, f"unknown top-level fields: {sorted(unknown)}")
    raw_themes = payload.get("themes")
    raw_concepts = payload.get("concepts")
    _require(isinstance(raw_themes, list), "'themes' must be an array")
    _require(isinstance(raw_concepts, list), "'concepts' must be an array")
    assert isinstance(raw_themes, list) and isinstance(raw_concepts, list)

    themes = _parse_themes(raw_themes)
    concepts = _parse_concepts(raw_concepts, set(themes))

    # Resolve concept ownership from the themes' concepts arrays.
    owner: dict[str, str] = {}
    for tid, obj in themes.items():
        for cid in obj.get("concepts", []):
            if cid not in concepts:
                raise ValidationError(f"theme {tid!r} references unknown concept {cid!r}")
            if cid in owner:
                raise ValidationError(
                    f"duplicate concept assignment: {cid!r} appears under "
                    f"both {owner[cid]!r} and {tid!r}"
                )
            owner[cid] = tid
    for cid in concepts:
        if cid not in owner:
            raise ValidationError(f"concept {cid!r} is not owned by any theme")

    # Resolve the theme hierarchy and check parent/children consistency.
    claimed_by: dict[str, str] = {}
    for tid, obj in themes.items():
        for child in obj.get("children", []):
            if child not in themes:
                raise ValidationError(f"theme {tid!r} references unknown child theme {child!r}")
            if child in claimed_by:
                raise ValidationError(
                    f"theme {child!r} is listed as a child of both "
                    f"{claimed_by[child]!r} and {tid!r}"
                )
            claimed_by[child] = tid
    for tid, obj in themes.items():
        declared = obj.get("parent_id")
        derived = claimed_by.get(tid)
        if declared != derived:
            raise ValidationError(
                f"theme {tid!r}: parent_id {declared!r} does not match the "
                f"children arrays (expected {derived!r})"
            )

    _check_cycles(themes, claimed_by)

    built_themes = {
        tid: Theme(
            id=tid,
            label=obj["label"],
            parent_id=claimed_by.get(tid),
            child_theme_ids=tuple(obj.get("children", [])),
            concept_ids=tuple(obj.get("concepts", [])),
        )
        for tid, obj in themes.items()
    }
    built_concepts = {
        cid: Concept(
            id=cid,
            preferred_label=obj["label"],
            synonyms=tuple(obj.get("synonyms", [])),
            theme_id=owner[cid],
        )
        for cid, obj in concepts.items()
    }
    root_ids = tuple(tid for tid in built_themes if built_themes[tid].parent_id is None)
    surface_map = _build_surface_map(built_concepts)
    return Ontology(
        themes=built_themes,
        concepts=built_concepts,
        root_ids=root_ids,
        surface_map=surface_map,
    )


def _check_cycles(themes: dict[str, dict], parent_of: dict[str, str]) -> None:
    state: dict[str, int] = {}  # 0 = visiting, 1 = done
    for start in themes:
        if state.get(start) == 1:
            continue
        path: list[str] = []
        node: str | None = start
        while node is not None and state.get(node) != 1:
            if state.get(node) == 0:
                cycle = path[path.index(node):] + [node]
                raise ValidationError(f"cycle in theme hierarchy: {' -> '.join(cycle)}")
            state[node] = 0
            path.append(node)
            node = parent_of.get(node)
        for visited in path:
            state[visited] = 1


def _build_surface_map(concepts: dict[str, Concept]) -> dict[str, str]:
    surface_map: dict[str, str] = {}
    for concept in concepts.values():
        surfaces = [concept.preferred_label, *concept.synonyms]
        seen_synonyms: set[str] = set()
        for i, raw in enumerate(surfaces):
            surface = normalize_surface(raw)
            if not surface:
                raise ValidationError(
                    f"concept {concept.id!r}: surface {raw!r} is empty after normalization"
                )
            if i > 0:
                if surface in seen_synonyms:
                    raise ValidationError(
                        f"concept {concept.id!r}: duplicate synonym {surface!r}"
                    )
                seen_synonyms.add(surface)
            other = surface_map.get(surface)
            if other is not None and other != concept.id:
                raise ValidationError(
                    f"ambiguous surface {surface!r}: claimed by both "
                    f"{other!r} and {concept.id!r}"
                )
            surface_map[surface] = concept.id
    return surface_map
