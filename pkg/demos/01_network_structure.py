"""Build a word co-occurrence network from a handful of short posts and look at its shape.

Run: python3 demos/01_network_structure.py
"""

from wcnevent import RawDocument, build_wcn, node_metrics, preprocess
from wcnevent.netsci import aspl, assortativity, distribution, fit_power_law, small_world

POSTS = [
    "Amy Winehouse died today at her London home",
    "RT Amy Winehouse died aged 27 #RIP http://t.co/x1",
    "Singer Amy Winehouse found dead in London flat",
    "Police confirm singer Amy Winehouse has died",
    "London riots spread to Ealing tonight",
    "Riots in Ealing as shops burn in London",
    "Man attacked in Ealing riots has died",
]


def main() -> None:
    streams = [preprocess(RawDocument(str(i), t)) for i, t in enumerate(POSTS)]
    for s in streams[:3]:
        print(f"{s.doc_id}: {' '.join(s.tokens)}")

    g = build_wcn(streams)
    print(f"\n{g.number_of_nodes()} words, {g.number_of_edges()} directed edges, total weight {g.total_weight()}")
    print("heaviest edges:")
    for tail, head, w in sorted(g.edges(), key=lambda e: (-e[2], e[0], e[1]))[:5]:
        print(f"  {tail} -> {head}  ({w})")

    metrics = {w: node_metrics(g, w) for w in g.nodes()}
    hubs = sorted(metrics.items(), key=lambda kv: (-kv[1].strength, kv[0]))[:3]
    print("\nstrongest words:", ", ".join(f"{w} (s={m.strength})" for w, m in hubs))

    deg = distribution(g, "degree")
    print("\ndegree histogram:", dict(deg.histogram))
    try:
        fit = fit_power_law(deg)
        print(f"power-law slope {fit.gamma:.2f} (R^2 {fit.r_squared:.2f}); too few words to call it scale-free")
    except ValueError as exc:
        print("no power-law fit:", exc)

    a = assortativity(g)
    print(f"\ndegree correlation tau = {a.tau:.3f}" if a.defined else "\ndegree correlation undefined")
    print(f"mean shortest path (undirected, largest component): {aspl(g, 'undirected', True):.2f}")
    sw = small_world(g, seed=1)
    print(f"clustering {sw.cc:.2f} vs random {sw.cc_random:.2f}; small-world: {sw.verdict}")


if __name__ == "__main__":
    main()
