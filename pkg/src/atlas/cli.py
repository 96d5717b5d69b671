"""Command line entry points: ``atlas index`` and ``atlas serve``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .corpus import load_corpus, load_stopwords
from .errors import AtlasError
from .layout import DEFAULT_DISTORTION
from .ontology import load_ontology
from .server import ServerConfig, create_app
from .snapshot import build_snapshot, load_snapshot, save_snapshot


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="atlas", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    index = sub.add_parser("index", help="annotate a corpus and write a snapshot")
    index.add_argument("--corpus", required=True, help="directory of *.txt documents")
    index.add_argument("--ontology", required=True, help="ontology JSON file")
    index.add_argument("--out", required=True, help="snapshot output path")
    index.add_argument("--stopwords", default=None, help="stopword list (default: bundled English)")

    serve = sub.add_parser("serve", help="serve the HTTP API over a snapshot")
    serve.add_argument("--snapshot", required=True, help="snapshot file written by 'atlas index'")
    serve.add_argument("--listen", default="127.0.0.1:8000", metavar="HOST:PORT")
    serve.add_argument("--distortion", type=float, default=DEFAULT_DISTORTION)
    serve.add_argument("--tau", type=float, default=None, help="similarity threshold override")
    serve.add_argument("--k", type=int, default=10, help="top-k cap for lists")
    serve.add_argument("--max-neighbors", type=int, default=12)
    return parser


def index_command(args: argparse.Namespace) -> int:
    if not Path(args.ontology).is_file():
        print(f"atlas: cannot read ontology file: {args.ontology}", file=sys.stderr)
        return 1
    try:
        ontology = load_ontology(args.ontology)
        stopwords = load_stopwords(args.stopwords)
        records = load_corpus(args.corpus)
        if not records:
            print(f"atlas: warning: corpus {args.corpus} contains no documents", file=sys.stderr)
        snapshot = build_snapshot(ontology, records, stopwords)
        save_snapshot(snapshot, args.out)
    except (AtlasError, OSError, UnicodeDecodeError) as exc:
        print(f"atlas: {exc}", file=sys.stderr)
        return 1
    matched = sum(1 for postings in snapshot.inverted.postings.values() if postings)
    print(
        f"indexed {len(snapshot.documents)} documents, "
        f"{matched} concepts matched, "
        f"{len(snapshot.association.edges)} association edges, "
        f"{len(snapshot.similarity.edges)} similarity edges -> {args.out}"
    )
    return 0


def serve_command(args: argparse.Namespace) -> int:
    host, _, port_text = args.listen.rpartition(":")
    if not host or not port_text.isdigit():
        print(f"atlas: --listen expects HOST:PORT, got {args.listen!r}", file=sys.stderr)
        return 2
    try:
        snapshot = load_snapshot(args.snapshot)
        config = ServerConfig(
            host=host,
            port=int(port_text),
            distortion=args.distortion,
            similarity_threshold=args.tau,
            top_k=args.k,
            max_neighbors=args.max_neighbors,
        )
    except (AtlasError, OSError) as exc:
        print(f"atlas: {exc}", file=sys.stderr)
        return 1
    app = create_app(snapshot, config)

    import uvicorn

    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "index":
        return index_command(args)
    return serve_command(args)


if __name__ == "__main__":
    sys.exit(main())
