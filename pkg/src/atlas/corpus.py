"""Corpus loading: front-matter document files, descriptive fields, tokenization.

A corpus is a directory of ``*.txt`` files; each document id is the file
path relative to the corpus root. Files may start with a header block of
``key: value`` lines terminated by a blank line. Recognized keys are
``title``, ``authors`` (semicolon-separated), ``date`` (ISO-8601),
``abstract`` and ``keywords`` (comma-separated). A file whose first line
is not one of those headers is treated as headerless: the title defaults
to the file stem and the whole content becomes the body.
"""

from __future__ import annotations

import datetime
import re
from dataclasses import dataclass
from pathlib import Path, PurePosixPath

from .errors import ParseError
from .text import iter_tokens

HEADER_KEYS = ("title", "authors", "date", "abstract", "keywords")

_HEADER_LINE = re.compile(r"^([A-Za-z][A-Za-z0-9_-]*):\s*(.*)$")
_FIRST_LINE = re.compile(rf"^({'|'.join(HEADER_KEYS)}):\s*(.*)$")


@dataclass(frozen=True)
class DocumentRecord:
    doc_id: str
    title: str
    authors: tuple[str, ...]
    pub_date: str | None
    format: str
    size_bytes: int
    abstract: str | None
    keywords: tuple[str, ...]
    body: str


@dataclass(frozen=True)
class TokenStream:
    doc_id: str
    tokens: tuple[tuple[str, int], ...]  # (case-folded surface, char offset)


def parse_document(path: str | Path, doc_id: str | None = None) -> DocumentRecord:
    """Parse one document file into a record.

    Header fields populate the descriptive annotations; the remainder of
    the file becomes the body. I/O and UTF-8 decoding errors propagate
    as the builtin OSError / UnicodeDecodeError.
    """
    path = Path(path)
    raw = path.read_bytes()
    text = raw.decode("utf-8")
    if doc_id is None:
        doc_id = path.name

    header, body = _split_header(text, str(path))
    title = header.get("title", path.stem)
    if title.strip() == "":
        raise ParseError("header field 'title' must not be empty", path=str(path))
    pub_date = header.get("date")
    if pub_date is not None:
        try:
            datetime.date.fromisoformat(pub_date)
        except ValueError:
            raise ParseError(f"invalid ISO-8601 date: {pub_date!r}", path=str(path)) from None
    authors = _split_list(header.get("authors"), ";")
    keywords = _split_list(header.get("keywords"), ",")
    return DocumentRecord(
        doc_id=doc_id,
        title=title,
        authors=authors,
        pub_date=pub_date,
        format=path.suffix.lstrip(".") or "txt",
        size_bytes=len(raw),
        abstract=header.get("abstract"),
        keywords=keywords,
        body=body,
    )


def load_corpus(corpus_dir: str | Path) -> list[DocumentRecord]:
    """Parse every ``*.txt`` file under ``corpus_dir``, sorted by doc id.

    Doc ids are paths relative to the corpus root with forward slashes,
    so the result does not depend on directory listing order.
    """
    root = Path(corpus_dir)
    if not root.is_dir():
        raise ParseError(f"corpus directory not found: {root}")
    paths = {
        str(PurePosixPath(p.relative_to(root))): p
        for p in root.rglob("*.txt")
        if p.is_file()
    }
    return [parse_document(paths[doc_id], doc_id) for doc_id in sorted(paths)]


def assemble_text(record: DocumentRecord) -> str:
    """The text a document is tokenized from: body, title, abstract, keywords."""
    return "\n".join(
        [record.body, record.title, record.abstract or "", ", ".join(record.keywords)]
    )


def tokenize(record: DocumentRecord, stopwords: frozenset[str] = frozenset()) -> TokenStream:
    """Tokenize a record into case-folded alphanumeric tokens.

    Splits on any non-alphanumeric character, folds case, and drops
    stopwords. An empty document yields an empty stream.
    """
    text = assemble_text(record)
    tokens = tuple(
        (surface, offset) for surface, offset in iter_tokens(text) if surface not in stopwords
    )
    return TokenStream(doc_id=record.doc_id, tokens=tokens)


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Load a stopword list (one word per line); None loads the bundled default."""
    if path is None:
        from importlib import resources

        text = resources.files("atlas.data").joinpath("stopwords_en.txt").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return frozenset(word.strip().lower() for word in text.splitlines() if word.strip())


def _split_header(text: str, path: str) -> tuple[dict[str, str], str]:
    lines = text.split("\n")
    if not lines or not _FIRST_LINE.match(lines[0]):
        return {}, text
    header: dict[str, str] = {}
    body_start = len(lines)
    for i, line in enumerate(lines):
        if line.strip() == "":
            body_start = i + 1
            break
        match = _HEADER_LINE.match(line)
        if match is None:
            raise ParseError("malformed header line", line=i + 1, path=path)
        key, value = match.group(1), match.group(2).strip()
        if key in header:
            raise ParseError(f"duplicate header key: {key!r}", line=i + 1, path=path)
        header[key] = value
    body = "\n".join(lines[body_start:])
    return {k: v for k, v in header.items() if k in HEADER_KEYS}, body


def _split_list(value: str | None, separator: str) -> tuple[str, ...]:
    if value is None:
        return ()
    return tuple(part.strip() for part in value.split(separator) if part.strip())
