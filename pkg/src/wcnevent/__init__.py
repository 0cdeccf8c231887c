"""Word co-occurrence networks for keyphrase extraction and event detection in short texts."""

from .ahp import AhpAttributes, AhpModel, RankedPhrase, build_model, compute_attributes, rank, rank_phrases
from .baselines import CorpusStats, RandomWalkParams, ScoreTable, score, top_keywords
from .corpus import RawDocument, StopwordPolicy, TokenStream, domain_stopwords, load_corpus, preprocess
from .decompose import SubgraphSet, heuristic_retain, k_bridge, threshold_decompose
from .detect import DetectorConfig, EventPhrase, detect_events, obtain_events, twcm
from .evaluation import EvalReport, GroundTruth, bpref, prf, redundancy, rouge, topic_metrics
from .netsci import aspl, assortativity, distribution, fit_power_law, small_world
from .phrase import Keyphrase, barank, mls_extract, topo_keyphrase
from .wcn import NodeMetrics, WcnGraph, WcnMode, build_wcn, components, edge_strength, node_metrics

__version__ = "0.1.0"

__all__ = [
    "AhpAttributes",
    "AhpModel",
    "CorpusStats",
    "DetectorConfig",
    "EvalReport",
    "EventPhrase",
    "GroundTruth",
    "Keyphrase",
    "NodeMetrics",
    "RandomWalkParams",
    "RankedPhrase",
    "RawDocument",
    "ScoreTable",
    "StopwordPolicy",
    "SubgraphSet",
    "TokenStream",
    "WcnGraph",
    "WcnMode",
    "aspl",
    "assortativity",
    "barank",
    "bpref",
    "build_model",
    "build_wcn",
    "components",
    "compute_attributes",
    "detect_events",
    "distribution",
    "domain_stopwords",
    "edge_strength",
    "fit_power_law",
    "heuristic_retain",
    "k_bridge",
    "load_corpus",
    "mls_extract",
    "node_metrics",
    "obtain_events",
    "preprocess",
    "prf",
    "rank",
    "rank_phrases",
    "redundancy",
    "rouge",
    "score",
    "small_world",
    "threshold_decompose",
    "top_keywords",
    "topic_metrics",
    "topo_keyphrase",
    "twcm",
]
