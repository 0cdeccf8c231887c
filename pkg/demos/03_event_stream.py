"""Detect events in a simulated stream of short posts and score them.

Two stories break in different parts of the stream, surrounded by chatter.
The stream is processed in fixed-size windows; each window reports its
top-ranked event phrases, which are then checked against the known stories.

Run: python3 demos/03_event_stream.py
"""

import random

from wcnevent import DetectorConfig, RawDocument, detect_events
from wcnevent.evaluation import GroundTruth, Topic, evaluate

STORIES = {
    "quake": ["earthquake", "strikes", "chile", "coast", "tsunami", "warning"],
    "final": ["spain", "beats", "netherlands", "world", "cup", "final"],
}
CHATTER = ["coffee", "monday", "traffic", "weather", "lunch", "music", "movie", "sleep", "phone", "train"]


def stream(rng: random.Random) -> list[RawDocument]:
    docs = []
    for block, story in enumerate(["quake", "final"]):
        for i in range(120):
            if rng.random() < 0.6:
                # Posts quote most of the story, in varying order.
                words = rng.sample(STORIES[story], rng.randint(4, 6))
            else:
                words = rng.sample(CHATTER, 2)
            docs.append(RawDocument(f"{block}-{i}", " ".join(words)))
    return docs


def main() -> None:
    rng = random.Random(42)
    docs = stream(rng)
    cfg = DetectorConfig(window_size=120, m=2, M_G=2, t_s=0, top_n=3)
    print(f"{len(docs)} posts, windows of {cfg.window_size}, qualification needs more than {cfg.M_q} words")

    events = detect_events(docs, cfg)
    for e in events:
        print(f"  window {e.window_index}  #{e.rank}  {e.score:.3f}  {' '.join(e.words)}")

    truth = GroundTruth({k: Topic(" ".join(v), tuple(v)) for k, v in STORIES.items()})
    report = evaluate([e.words for e in events], truth)
    print(f"\ntopic recall {report.t_rec:.2f}, keyword recall {report.k_rec:.2f}, "
          f"keyword precision {report.k_prec:.2f}, ROUGE-1 {report.rouge_1:.2f}")


if __name__ == "__main__":
    main()
