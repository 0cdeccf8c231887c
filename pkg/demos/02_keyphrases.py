"""Turn a co-occurrence network into keyphrases, then rank them.

Three routes are compared: keep only the heaviest edges, peel the graph by
edge weight, and split it at its weakest links until each piece stops being
disassortative. The last set is ranked with the analytic hierarchy process.

Run: python3 demos/02_keyphrases.py
"""

from wcnevent import RawDocument, barank, build_wcn, heuristic_retain, k_bridge, preprocess, rank_phrases
from wcnevent.ahp import DEFAULT_PCM, build_model, compute_attributes
from wcnevent.phrase import sort_phrases, topo_keyphrase

POSTS = [
    "Amy Winehouse died today",
    "Amy Winehouse died aged 27",
    "Singer Amy Winehouse died in London",
    "Breaking: Amy Winehouse died",
    "London riots spread to Ealing",
    "London riots reach Ealing tonight",
    "Riots in London spread fast",
    "Norway attack kills many in Oslo",
    "Oslo attack suspect arrested in Norway",
]


def show(title, phrases) -> None:
    print(f"\n{title}")
    for p in phrases:
        print(f"  {p.density:5.2f}  {p.text}")


def main() -> None:
    g = build_wcn([preprocess(RawDocument(str(i), t)) for i, t in enumerate(POSTS)])
    print(f"graph: {g.number_of_nodes()} words, {g.number_of_edges()} edges")

    kept = heuristic_retain(g, "root_two")
    show(f"heaviest {kept.params['k']} edges, one phrase per piece",
         sort_phrases(topo_keyphrase(s, k) for k, s in enumerate(kept)))

    bridged = k_bridge(g, n_t=3)
    show(f"k-bridge peel ({bridged.params['rounds']} rounds)",
         sort_phrases(topo_keyphrase(s, k) for k, s in enumerate(bridged)))

    phrases = barank(g)
    show("assortativity-terminated split", phrases)

    multi = [p for p in phrases if len(p.words) >= 2]
    ranked = rank_phrases(multi, g)
    print("\nAHP ranking (default comparison matrix):")
    for r in ranked:
        print(f"  #{r.rank} {r.score:.3f} [{r.slot}] {r.phrase.text}")

    attrs = [compute_attributes(p.words, g, edges=None) for p in multi if _is_path(p.words, g)]
    if attrs:
        model = build_model(attrs, DEFAULT_PCM)
        d = model.diagnostics()
        print(f"\nattribute weights {[round(w, 3) for w in d['weights']]}, consistency ratio {d['cr']:.4f}")


def _is_path(words, g) -> bool:
    return all(g.has_edge(u, v) for u, v in zip(words, words[1:]))


if __name__ == "__main__":
    main()
