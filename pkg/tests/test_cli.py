import hashlib
import json
import pathlib

import pytest

from eventmine.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, main
from eventmine.records import read_jsonl

DATA = pathlib.Path(__file__).parent / "data"


def sha(path):
    return hashlib.sha256(pathlib.Path(path).read_bytes()).hexdigest()


def run(*argv):
    return main([str(a) for a in argv])


def test_mine_golden(tmp_path, capsys):
    out = tmp_path / "quads.jsonl"
    assert run("mine", DATA / "fixture_book.conllu", "--out", out) == EXIT_OK
    records = list(read_jsonl(out))
    golden = list(read_jsonl(DATA / "golden_quadruples.jsonl"))
    assert records == golden
    stdout = capsys.readouterr().out
    assert "accepts: 1" in stdout


def test_mine_empty_corpus(tmp_path, capsys):
    empty = tmp_path / "empty.conllu"
    empty.write_text("")
    out = tmp_path / "quads.jsonl"
    assert run("mine", empty, "--out", out) == EXIT_OK
    assert list(read_jsonl(out)) == []
    assert "matches: 0" in capsys.readouterr().out


def test_mine_bad_path(tmp_path):
    assert run("mine", tmp_path / "missing.conllu", "--out", tmp_path / "o") == EXIT_USAGE


def test_mine_config_header_echoed(tmp_path):
    out = tmp_path / "quads.jsonl"
    run("mine", DATA / "fixture_book.conllu", "--out", out, "--seed", 3)
    header = out.read_text().splitlines()[0]
    assert header.startswith("# config: ")
    assert json.loads(header[len("# config: ") :])["global_seed"] == 3


def test_config_file_precedence(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"global_seed": 11, "max_context_sentences": 2}))
    out = tmp_path / "quads.jsonl"
    run("mine", DATA / "fixture_book.conllu", "--out", out, "--config", config, "--seed", 99)
    effective = json.loads(out.read_text().splitlines()[0][len("# config: ") :])
    assert effective["global_seed"] == 99  # flag wins
    assert effective["max_context_sentences"] == 2  # file beats default


def test_strict_mode_aborts_on_bad_sentence(tmp_path):
    bad = tmp_path / "bad.conllu"
    bad.write_text("1\ta\ta\tX\t_\t_\t9\tdep\t_\t_\n\n")
    assert run("mine", bad, "--out", tmp_path / "o.jsonl", "--strict") == EXIT_DATA


def test_build_dataset_deterministic(tmp_path):
    quads = tmp_path / "quads.jsonl"
    run("mine", DATA / "fixture_book.conllu", "--out", quads)
    out1, out2 = tmp_path / "d1.jsonl", tmp_path / "d2.jsonl"
    assert run("build-dataset", quads, "--out", out1, "--seed", 7) == EXIT_OK
    assert run("build-dataset", quads, "--out", out2, "--seed", 7) == EXIT_OK
    assert sha(out1) == sha(out2)


def test_build_dataset_wrapped(tmp_path):
    quads = tmp_path / "quads.jsonl"
    run("mine", DATA / "fixture_book.conllu", "--out", quads)
    out = tmp_path / "wrapped.jsonl"
    assert run("build-dataset", quads, "--out", out, "--seed", 7, "--wrapped") == EXIT_OK
    for record in read_jsonl(out):
        assert set(record) == {"text"}
        assert "### Instruction:" in record["text"]


def test_build_dataset_malformed_record(tmp_path):
    quads = tmp_path / "quads.jsonl"
    quads.write_text('{"doc_id": "d"}\n')
    assert run("build-dataset", quads, "--out", tmp_path / "o.jsonl") == EXIT_DATA


def test_evaluate_mixed(tmp_path):
    preds = tmp_path / "preds.jsonl"
    lines = [
        {"task": "close", "raw_output": "B", "candidates": ["x", "y"], "gold_index": 1},
        {"task": "close", "raw_output": "the answer is A", "candidates": ["x", "y"], "gold_index": 1},
        {"task": "open", "raw_output": "a b", "reference": "a b"},
    ]
    preds.write_text("\n".join(json.dumps(l) for l in lines) + "\n")
    out = tmp_path / "report.json"
    assert run("evaluate", preds, "--out", out) == EXIT_OK
    report = json.loads(out.read_text())
    close, open_ = report["reports"]
    assert close["metric"] == "accuracy"
    assert close["value"] == 0.5
    assert close["decode_paths"] == {"LETTER": 1, "REGEX": 1}
    assert open_["metric"] == "rouge_l_f1"
    assert open_["value"] == 1.0


def test_evaluate_strict_malformed(tmp_path):
    preds = tmp_path / "preds.jsonl"
    preds.write_text('{"task": "close", "raw_output": "B"}\n')
    assert run("evaluate", preds, "--strict") == EXIT_DATA
    assert run("evaluate", preds) == EXIT_OK  # lenient skips


def test_stats_quads(tmp_path):
    outdir = tmp_path / "stats"
    assert run("stats", DATA / "golden_quadruples.jsonl", "--out", outdir) == EXIT_OK
    lengths = (outdir / "lengths.tsv").read_text().splitlines()
    assert lengths[0] == "length\tcount"
    assert "3\t2" in lengths  # head and tail both 3 words
    verbs = (outdir / "verbs.tsv").read_text().splitlines()
    assert "leave\t1" in verbs and "rain\t1" in verbs


def test_stats_patterns(tmp_path):
    outdir = tmp_path / "stats"
    assert run("stats", DATA / "structure_patterns.conllu", "--conllu", "--out", outdir) == EXIT_OK
    patterns = (outdir / "patterns.tsv").read_text()
    for expected in ("subj-verb-obj", "subj-verb-prep", "subj-aux-verb-obj", "verb-obj"):
        assert expected in patterns


def test_stats_top_k(tmp_path, capsys):
    assert run("stats", DATA / "golden_quadruples.jsonl", "--top-k", "1") == EXIT_OK
    out = capsys.readouterr().out
    assert "leave\t1" in out and "rain\t1" not in out


def test_dump_lexicon(capsys):
    assert run("dump-lexicon") == EXIT_OK
    out = capsys.readouterr().out
    assert "because\tEffect\tEffect" in out


def test_dump_templates(capsys):
    assert run("dump-templates") == EXIT_OK
    records = json.loads(capsys.readouterr().out)
    assert len(records) == 120


def test_usage_error_exit_code():
    assert run("no-such-command") == EXIT_USAGE


def test_worker_count_does_not_change_bytes(tmp_path):
    out1, out8 = tmp_path / "w1.jsonl", tmp_path / "w8.jsonl"
    run("mine", DATA / "fixture_book.conllu", DATA / "structure_patterns.conllu", "--out", out1, "--workers", 1)
    run("mine", DATA / "fixture_book.conllu", DATA / "structure_patterns.conllu", "--out", out8, "--workers", 8)
    assert sha(out1) == sha(out8)
