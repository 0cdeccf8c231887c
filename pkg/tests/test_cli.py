import json

import pytest

from wcnevent.cli import main

TWEETS = [
    "Amy Winehouse died today at her home in London",
    "RT Amy Winehouse died aged 27 #RIP",
    "Singer Amy Winehouse found dead in London flat",
    "Police confirm singer Amy Winehouse died",
    "London riots spread to Ealing tonight",
    "Riots in London Ealing shops burning tonight",
]


@pytest.fixture
def corpus(tmp_path):
    p = tmp_path / "corpus.jsonl"
    p.write_text("".join(json.dumps({"id": str(i), "text": t}) + "\n" for i, t in enumerate(TWEETS)))
    return p


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_build_report(corpus, capsys, tmp_path):
    el = tmp_path / "edges.tsv"
    code, out, _ = run(["build", "--input", corpus, "--no-timestamp", "--edgelist", el], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["command"] == "build" and rep["config"]["input"] == str(corpus)
    assert rep["result"]["edges"] == len(el.read_text().splitlines())
    assert "generated_at" not in rep


def test_reports_are_byte_identical(corpus, capsys):
    argv = ["analyze", "--input", corpus, "--seed", "5", "--no-timestamp"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second
    assert json.loads(first)["result"]["small_world"]["verdict"] in (True, False)


def test_timestamp_present_by_default(corpus, capsys):
    _, out, _ = run(["build", "--input", corpus], capsys)
    assert "generated_at" in json.loads(out)


def test_keywords_all_metrics(corpus, capsys):
    code, out, _ = run(["keywords", "--input", corpus, "--metric", "all", "--top", "3", "--no-timestamp"], capsys)
    assert code == 0
    res = json.loads(out)["result"]
    assert len(res) == 14 and all(len(v) == 3 for v in res.values())


@pytest.mark.parametrize("method", ["barank", "mls", "topo", "heuristic", "kbridge", "threshold"])
def test_keyphrase_methods(corpus, capsys, method):
    code, out, err = run(["keyphrase", "--input", corpus, "--method", method, "--no-timestamp"], capsys)
    assert code == 0, err
    phrases = json.loads(out)["result"]["phrases"]
    assert phrases and all(len(p["words"]) >= 2 for p in phrases)


def test_keyphrase_then_rank_then_eval(corpus, capsys, tmp_path):
    ph = tmp_path / "phrases.json"
    assert run(["keyphrase", "--input", corpus, "--method", "topo", "-o", ph, "--no-timestamp"], capsys)[0] == 0
    rk = tmp_path / "ranked.json"
    code, _, err = run(["rank", "--phrases", ph, "--pcm", "default", "-o", rk, "--no-timestamp"], capsys)
    assert code == 0, err
    ranked = json.loads(rk.read_text())["result"]["ranked"]
    assert [r["rank"] for r in ranked] == list(range(1, len(ranked) + 1))
    assert {r["slot"] for r in ranked} <= {"description", "headline", "relevant"}
    truth = tmp_path / "topics.jsonl"
    truth.write_text(json.dumps({"topic_id": "t1", "title": "Amy Winehouse died", "keywords": ["amy", "winehouse", "died"]}) + "\n")
    code, out, err = run(["eval", "--truth", truth, "--run", rk, "--no-timestamp"], capsys)
    assert code == 0, err
    assert json.loads(out)["result"]["t_rec"] == 1.0


def test_detect_jsonl_and_report(corpus, capsys, tmp_path):
    rep = tmp_path / "rep.json"
    argv = ["detect", "--input", corpus, "--window", "10", "--m", "1", "--mg", "2", "--ts", "0", "--report", rep, "--no-timestamp"]
    code, out, err = run(argv, capsys)
    assert code == 0, err
    lines = [json.loads(l) for l in out.splitlines()]
    for e in lines:
        assert set(e) == {"window", "rank", "score", "words"}
    report = json.loads(rep.read_text())
    assert report["config"]["detector"]["M_q"] == 2
    _, again, _ = run(argv, capsys)
    assert again == out


def test_usage_errors_exit_two(corpus, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["keyphrase", "--input", str(corpus), "--method", "bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_data_errors_exit_one_with_json(tmp_path, capsys):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"id": "1"}\n')
    code, _, err = run(["build", "--input", bad], capsys)
    assert code == 1
    assert "bad.jsonl" in json.loads(err)["error"]["message"]
    code, _, err = run(["build", "--input", tmp_path / "missing.jsonl"], capsys)
    assert code == 1 and "error" in json.loads(err)


def test_config_file_precedence(corpus, capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(f"# defaults\ninput = {corpus}\nmethod = topo\ntop = 1\nno-timestamp = true\n")
    _, out, _ = run(["keyphrase", "--config", cfg], capsys)
    rep = json.loads(out)
    assert rep["config"]["method"] == "topo" and len(rep["result"]["phrases"]) == 1
    assert "generated_at" not in rep
    _, out, _ = run(["keyphrase", "--config", cfg, "--top", "2"], capsys)
    assert json.loads(out)["config"]["top"] == 2


def test_config_file_unknown_key(corpus, capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("colour = blue\n")
    with pytest.raises(SystemExit) as exc:
        main(["build", "--input", str(corpus), "--config", str(cfg)])
    assert exc.value.code == 2


def test_config_file_bad_choice(corpus, capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("method = bogus\n")
    with pytest.raises(SystemExit) as exc:
        main(["keyphrase", "--input", str(corpus), "--config", str(cfg)])
    assert exc.value.code == 2
