import json

from atlas.cli import main
from atlas.snapshot import load_snapshot


def test_index_command_seed_corpus(tmp_path, capsys, corpus_dir, ontology_path):
    out = tmp_path / "snap.json"
    code = main(
        [
            "index",
            "--corpus",
            str(corpus_dir),
            "--ontology",
            str(ontology_path),
            "--out",
            str(out),
        ]
    )
    assert code == 0
    captured = capsys.readouterr()
    assert "12 documents" in captured.out
    snapshot = load_snapshot(out)
    assert len(snapshot.documents) == 12


def test_index_empty_corpus_warns_but_succeeds(tmp_path, capsys, ontology_path):
    empty = tmp_path / "empty"
    empty.mkdir()
    out = tmp_path / "snap.json"
    code = main(
        ["index", "--corpus", str(empty), "--ontology", str(ontology_path), "--out", str(out)]
    )
    assert code == 0
    captured = capsys.readouterr()
    assert "warning" in captured.err
    assert "0 documents" in captured.out
    snapshot = load_snapshot(out)
    assert snapshot.documents == ()


def test_index_missing_ontology_fails(tmp_path, capsys, corpus_dir):
    code = main(
        [
            "index",
            "--corpus",
            str(corpus_dir),
            "--ontology",
            str(tmp_path / "missing.json"),
            "--out",
            str(tmp_path / "snap.json"),
        ]
    )
    assert code != 0
    assert "cannot read ontology" in capsys.readouterr().err


def test_index_invalid_ontology_fails(tmp_path, capsys, corpus_dir):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"themes": [], "concepts": [], "bogus": 1}), encoding="utf-8")
    code = main(
        [
            "index",
            "--corpus",
            str(corpus_dir),
            "--ontology",
            str(bad),
            "--out",
            str(tmp_path / "snap.json"),
        ]
    )
    assert code == 1
    assert "atlas:" in capsys.readouterr().err


def test_serve_rejects_bad_listen(tmp_path, capsys, corpus_dir, ontology_path):
    out = tmp_path / "snap.json"
    main(["index", "--corpus", str(corpus_dir), "--ontology", str(ontology_path), "--out", str(out)])
    capsys.readouterr()
    code = main(["serve", "--snapshot", str(out), "--listen", "nonsense"])
    assert code == 2
    assert "HOST:PORT" in capsys.readouterr().err


def test_serve_rejects_missing_snapshot(tmp_path, capsys):
    code = main(["serve", "--snapshot", str(tmp_path / "nope.json"), "--listen", "127.0.0.1:0"])
    assert code == 1
