"""Text normalization primitives shared by ontology matching and tokenization.

Case folding is Unicode simple lowercase and whitespace normalization
collapses runs to a single space, so surface matching is deterministic
and locale independent.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator

_WS_RUN = re.compile(r"\s+")
# Maximal runs of alphanumeric characters; underscore counts as a separator.
_TOKEN = re.compile(r"[^\W_]+", re.UNICODE)


def normalize_surface(surface: str) -> str:
    """Case-fold and collapse whitespace runs to single spaces, trimmed."""
    return _WS_RUN.sub(" ", surface.lower()).strip()


def iter_tokens(text: str) -> Iterator[tuple[str, int]]:
    """Yield (case-folded surface, char offset) for each alphanumeric run."""
    for match in _TOKEN.finditer(text):
        yield match.group().lower(), match.start()


def token_seq(text: str, stopwords: Iterable[str] = ()) -> tuple[str, ...]:
    """Case-folded token sequence of ``text`` with stopwords removed."""
    stop = stopwords if isinstance(stopwords, (set, frozenset)) else frozenset(stopwords)
    return tuple(surface for surface, _ in iter_tokens(text) if surface not in stop)
