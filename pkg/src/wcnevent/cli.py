"""Command-line entry point.

Every command writes one JSON report with sorted keys that embeds its fully
resolved configuration. Options may also come from a ``key = value`` config
file; command-line flags take precedence over it, and it over built-in
defaults.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .ahp import DEFAULT_PCM, load_pcm, rank_phrases
from .baselines import METRICS, CorpusStats, RandomWalkParams, score, top_keywords
from .corpus import StopwordPolicy, load_corpus, load_stopwords, preprocess_all
from .decompose import HEURISTICS, heuristic_retain, k_bridge, threshold_decompose
from .detect import DetectorConfig, detect_events
from .evaluation import evaluate, load_ground_truth
from .netsci import DISTRIBUTION_KINDS, aspl, assortativity, distribution, fit_power_law, small_world
from .phrase import Keyphrase, barank, break_cycles, mls_extract, sort_phrases, topo_keyphrase
from .wcn import WcnMode, build_wcn, component_subgraphs

__all__ = ["main", "build_parser", "read_config_file"]

BOOL_WORDS = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


class DataError(Exception):
    pass


def read_config_file(path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment. Dashes in keys become underscores."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DataError(f"{path}:{line_no}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _add_corpus_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--input", required=required, help="corpus file (JSONL or TSV)")
    p.add_argument("--format", choices=("jsonl", "tsv"), default=None, help="corpus format (default: by suffix)")
    p.add_argument("--stopwords", default=None, help="stopword override file, one word per line")
    p.add_argument("--pairing", choices=("nearest_neighbour", "all_pair"), default="nearest_neighbour")
    p.add_argument("--undirected", action="store_true", help="build an undirected graph")
    p.add_argument("--unweighted", action="store_true", help="ignore repeated co-occurrences")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wcnevent", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="key = value config file")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", "-o", default=None, help="report path (default: stdout)")
    common.add_argument("--no-timestamp", action="store_true", help="omit the generation time from reports")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="build a graph and summarize it")
    _add_corpus_args(p)
    p.add_argument("--edgelist", default=None, help="also write tail<TAB>head<TAB>weight lines here")

    p = sub.add_parser("analyze", parents=[common], help="structural analysis of the graph")
    _add_corpus_args(p)
    p.add_argument("--k-min", type=float, default=1.0)
    p.add_argument("--min-count", type=int, default=1)

    p = sub.add_parser("keywords", parents=[common], help="baseline keyword scores")
    _add_corpus_args(p)
    p.add_argument("--metric", action="append", choices=METRICS + ("all",), default=None)
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--direction", choices=("top", "bottom"), default="top")
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--epsilon", type=float, default=1e-4)
    p.add_argument("--max-iterations", type=int, default=1000)
    p.add_argument("--hits-mode", choices=("recursive", "degree"), default="recursive")

    p = sub.add_parser("keyphrase", parents=[common], help="extract keyphrases")
    _add_corpus_args(p)
    p.add_argument("--method", choices=("heuristic", "kbridge", "threshold", "mls", "topo", "barank"), default="barank")
    p.add_argument("--heuristic", choices=HEURISTICS, default="root_two")
    p.add_argument("--n-t", type=int, default=5)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--max-rounds", type=int, default=1, help="threshold rounds; 0 repeats to a fixed point")
    p.add_argument("--max-paths", type=int, default=1000)
    p.add_argument("--top", type=int, default=None)

    p = sub.add_parser("rank", parents=[common], help="rank a phrase report with AHP")
    p.add_argument("--phrases", required=True, help="phrase report written by keyphrase")
    _add_corpus_args(p, required=False)
    p.add_argument("--pcm", default="default", help="4x4 comparison matrix file or 'default'")
    p.add_argument("--description-over", type=int, default=12)
    p.add_argument("--relevant-upto", type=int, default=3)

    p = sub.add_parser("detect", parents=[common], help="sliding-window event detection")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("jsonl", "tsv"), default=None)
    p.add_argument("--stopwords", default=None)
    p.add_argument("--window", type=int, default=200)
    p.add_argument("--m", type=float, default=2.0)
    p.add_argument("--mg", type=int, default=2)
    p.add_argument("--ts", type=str, default="0.01", help="fraction in [0,1) or integer count")
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--pcm", default="default")
    p.add_argument("--report", default=None, help="also write a JSON report with the resolved config")

    p = sub.add_parser("eval", parents=[common], help="score a run against ground truth")
    p.add_argument("--truth", required=True, help="topics JSONL {topic_id, title, keywords}")
    p.add_argument("--relevance", default=None, help="doc_id<TAB>topic_id file")
    p.add_argument("--run", required=True, help="events JSONL or phrase/rank report JSON")
    p.add_argument("--match-fraction", type=float, default=0.5)
    p.add_argument("--overlap", type=float, default=0.5)
    return parser


def _parse(argv) -> argparse.Namespace:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    sub = parser._subparsers._group_actions[0].choices
    command = next((a for a in argv if a in sub), None)
    if known.config and command is not None:
        try:
            cfg = read_config_file(known.config)
        except OSError as exc:
            raise DataError(f"cannot read config file: {exc}") from None
        sp = sub[command]
        dests = {a.dest: a for a in sp._actions}
        unknown = sorted(set(cfg) - set(dests) - {"config"})
        if unknown:
            sp.error(f"unknown config keys: {', '.join(unknown)}")
        defaults = {}
        for k, v in cfg.items():
            if k == "config":
                continue
            action = dests[k]
            if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
                if v.lower() not in BOOL_WORDS:
                    sp.error(f"config key {k} expects true/false")
                defaults[k] = BOOL_WORDS[v.lower()]
            elif isinstance(action, argparse._AppendAction):
                defaults[k] = [s.strip() for s in v.split(",") if s.strip()]
            else:
                if action.choices is not None and v not in action.choices:
                    sp.error(f"config key {k}: invalid choice {v!r}")
                defaults[k] = v
            # A value from the config file satisfies a required flag.
            action.required = False
        sp.set_defaults(**defaults)
    return parser.parse_args(argv)


def _policy(args) -> StopwordPolicy:
    if getattr(args, "stopwords", None):
        return StopwordPolicy(base_list=load_stopwords(args.stopwords))
    return StopwordPolicy()


def _streams(args):
    docs = load_corpus(args.input, args.format)
    return preprocess_all(docs, _policy(args))


def _mode(args) -> WcnMode:
    return WcnMode(args.pairing, not args.undirected, not args.unweighted)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, np.generic):
        return x.item()
    return x


def _dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("output", "no_timestamp")}


def _report(args, result) -> dict:
    rep = {"command": args.command, "config": _config(args), "result": result, "version": __version__}
    if not args.no_timestamp:
        rep["generated_at"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return rep


def _write(path, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_build(args) -> dict:
    g = build_wcn(_streams(args), _mode(args))
    if args.edgelist:
        g.write_edgelist(args.edgelist)
    return {"nodes": g.number_of_nodes(), "edges": g.number_of_edges(), "total_weight": g.total_weight()}


def cmd_analyze(args) -> dict:
    g = build_wcn(_streams(args), _mode(args))
    if len(g) == 0:
        raise DataError("corpus produced an empty graph")
    out: dict = {"nodes": g.number_of_nodes(), "edges": g.number_of_edges()}
    dists = {k: distribution(g, k) for k in DISTRIBUTION_KINDS if g.number_of_edges() or "edge" not in k}
    out["histograms"] = {k: {str(v): c for v, c in d.histogram.items()} for k, d in dists.items()}
    fits = {}
    for kind in ("degree", "in_degree", "out_degree", "strength"):
        try:
            f = fit_power_law(dists[kind], args.k_min, min_count=args.min_count)
            fits[kind] = {"gamma": f.gamma, "fit_range": list(f.fit_range), "r_squared": f.r_squared,
                          "method": f.method, "scale_free": f.scale_free}
        except ValueError as exc:
            fits[kind] = {"error": str(exc)}
    out["power_law"] = fits
    out["aspl"] = {}
    for view in ("undirected", "directed"):
        for largest in (False, True):
            key = f"{view}{'_largest' if largest else ''}"
            try:
                out["aspl"][key] = aspl(g, view, largest)
            except ValueError:
                out["aspl"][key] = None
    if g.number_of_edges():
        a = assortativity(g)
        out["assortativity"] = {"tau": a.tau, "A": a.A, "B": a.B, "C": a.C, "M": a.M}
    sw = small_world(g, args.seed)
    out["small_world"] = {"cc": sw.cc, "cc_random": sw.cc_random, "aspl": sw.aspl,
                          "aspl_random": sw.aspl_random, "verdict": sw.verdict}
    return out


def cmd_keywords(args) -> dict:
    streams = _streams(args)
    g = build_wcn(streams, _mode(args))
    if len(g) == 0:
        raise DataError("corpus produced an empty graph")
    stats = CorpusStats.from_streams(streams)
    params = RandomWalkParams(args.damping, args.epsilon, args.max_iterations)
    metrics = args.metric or ["textrank"]
    if "all" in metrics:
        metrics = list(METRICS)
    out = {}
    for m in metrics:
        t = score(g, m, stats, params, args.hits_mode)
        out[m] = [[w, t.scores[w]] for w in top_keywords(t, args.top, args.direction)]
    return out


def _phrases_for(args) -> list[Keyphrase]:
    g = build_wcn(_streams(args), _mode(args))
    if g.number_of_edges() == 0:
        raise DataError("corpus produced a graph without edges")
    m = args.method
    if m == "barank":
        return barank(g)
    if m in ("mls", "topo"):
        out = []
        for label, comp in enumerate(component_subgraphs(g)):
            if len(comp) < 2:
                continue
            if m == "mls":
                out.extend(mls_extract(comp, args.max_paths, label))
            else:
                out.append(topo_keyphrase(comp, label))
        return sort_phrases(out)
    if m == "heuristic":
        subs = heuristic_retain(g, args.heuristic)
    elif m == "kbridge":
        subs = k_bridge(g, args.n_t)
    else:
        subs = threshold_decompose(g, args.p, None if args.max_rounds == 0 else args.max_rounds)
    return sort_phrases(topo_keyphrase(s, k, "topo") for k, s in enumerate(subs))


def cmd_keyphrase(args) -> dict:
    phrases = _phrases_for(args)
    if args.top is not None:
        phrases = phrases[: args.top]
    return {"phrases": [p.to_dict() for p in phrases]}


def _read_pcm(spec: str):
    return DEFAULT_PCM if spec == "default" else load_pcm(spec)


def cmd_rank(args) -> dict:
    try:
        report = json.loads(Path(args.phrases).read_text(encoding="utf-8"))
        phrases = [Keyphrase.from_dict(d) for d in report["result"]["phrases"]]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise DataError(f"not a phrase report: {exc}") from None
    if args.input is None:
        cfg = report.get("config", {})
        if not cfg.get("input"):
            raise DataError("phrase report names no corpus; pass --input")
        for key in ("input", "format", "stopwords", "pairing", "undirected", "unweighted"):
            setattr(args, key, cfg.get(key, getattr(args, key)))
    g = build_wcn(_streams(args), _mode(args))
    own = []
    for p in phrases:
        words = p.words
        if all(g.has_edge(u, v) for u, v in zip(words, words[1:])):
            own.append(None)
        else:
            own.append(break_cycles(g.subgraph(words)).edges())
    ranked = rank_phrases(phrases, g, _read_pcm(args.pcm), own,
                          description_over=args.description_over, relevant_upto=args.relevant_upto)
    return {"ranked": [r.to_dict() for r in ranked]}


def _ts_value(text: str):
    try:
        v = float(text)
    except ValueError:
        raise DataError(f"--ts must be a number, got {text!r}") from None
    return int(v) if v >= 1 and v.is_integer() else v


def cmd_detect(args):
    pcm = _read_pcm(args.pcm)
    cfg = DetectorConfig(args.window, args.m, args.mg, _ts_value(args.ts), args.top,
                         tuple(map(tuple, pcm.tolist())))
    docs = load_corpus(args.input, args.format)
    events = detect_events(docs, cfg, _policy(args))
    lines = "".join(json.dumps(_jsonable(e.to_dict()), sort_keys=True) + "\n" for e in events)
    return cfg, events, lines


def _run_phrases(path) -> list[list[str]]:
    text = Path(path).read_text(encoding="utf-8")
    try:
        rep = json.loads(text)
    except json.JSONDecodeError:
        rep = None
    if isinstance(rep, dict) and "result" in rep:
        res = rep["result"]
        items = res.get("phrases") or res.get("ranked") or res.get("events") or []
        return [list(d["words"]) for d in items]
    out = []
    for line_no, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            out.append(list(json.loads(line)["words"]))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise DataError(f"{path}:{line_no}: bad run record ({exc})") from None
    return out


def cmd_eval(args) -> dict:
    truth = load_ground_truth(args.truth, args.relevance)
    phrases = _run_phrases(args.run)
    return evaluate(phrases, truth, args.match_fraction, args.overlap).to_dict()


def main(argv=None) -> int:
    try:
        args = _parse(argv)
    except DataError as exc:
        sys.stderr.write(_dumps({"error": {"type": "DataError", "message": str(exc)}}))
        return 1
    try:
        if args.command == "detect":
            cfg, events, lines = cmd_detect(args)
            _write(args.output, lines)
            if args.report:
                rep = _report(args, {"events": [e.to_dict() for e in events]})
                rep["config"]["detector"] = cfg.to_dict()
                Path(args.report).write_text(_dumps(rep), encoding="utf-8")
            return 0
        handler = {
            "build": cmd_build,
            "analyze": cmd_analyze,
            "keywords": cmd_keywords,
            "keyphrase": cmd_keyphrase,
            "rank": cmd_rank,
            "eval": cmd_eval,
        }[args.command]
        _write(args.output, _dumps(_report(args, handler(args))))
        return 0
    except (DataError, OSError, ValueError, KeyError) as exc:
        sys.stderr.write(_dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}))
        return 1


if __name__ == "__main__":
    sys.exit(main())
