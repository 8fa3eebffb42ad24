"""Regenerate the bundled 500-article synthetic corpus.

Deterministic: the output depends only on the seed below. Articles are built
from five disjoint-leaning topic vocabularies, grouped into short story
threads (coverage of one story propagating across outlets over a few days),
and attributed to the bundled fixture publishers so every barrier kind
resolves for most articles.

Each article carries a dominant thread concept plus two weaker topic
concepts, so concept-mode similarity links articles within a thread but not
across threads: the propagation graph decomposes into small per-story
components instead of one dense blob.

Usage: python scripts/generate_synthetic_corpus.py
"""
from __future__ import annotations

import csv
import json
import random
from datetime import datetime, timedelta, timezone
from pathlib import Path

SEED = 20231101
N_ARTICLES = 500
OUT = Path(__file__).resolve().parents[1] / "src" / "newsbarriers" / "data" / "synthetic_corpus.jsonl"
PUBLISHERS = Path(__file__).resolve().parents[1] / "src" / "newsbarriers" / "data" / "publishers.csv"

TOPICS = {
    "diplomacy": ["diplomacy", "negotiation", "summit", "treaty", "ambassador",
                  "ceasefire", "mediation", "delegation", "resolution", "talks",
                  "envoy", "accord"],
    "military": ["offensive", "artillery", "battalion", "frontline", "missile",
                 "drone", "airstrike", "infantry", "armor", "trenches",
                 "bombardment", "garrison"],
    "economy": ["sanctions", "inflation", "exports", "trade", "markets",
                "currency", "tariffs", "embargo", "commodities", "budget",
                "investment", "shortage"],
    "humanitarian": ["refugees", "evacuation", "shelter", "aid", "displacement",
                     "civilians", "hospitals", "corridor", "famine", "relief",
                     "volunteers", "orphans"],
    "energy": ["pipeline", "gas", "grid", "blackout", "reactor", "fuel",
               "turbine", "supply", "electricity", "infrastructure",
               "generators", "heating"],
}

POSITIVE = ["peace", "hope", "progress", "agree", "support", "calm", "improve"]
NEGATIVE = ["crisis", "attack", "fear", "threat", "conflict", "violence", "destroy"]
FILLER = ["officials", "reported", "statement", "region", "sources", "analysts",
          "week", "capital", "border", "government", "response", "situation"]


def load_publishers() -> list[str]:
    with open(PUBLISHERS, newline="", encoding="utf-8") as fh:
        return [row["source_name"] for row in csv.DictReader(fh)]


def make_sentence(rng: random.Random, vocab: list[str], tone: list[str]) -> str:
    words = rng.sample(vocab, 3) + rng.sample(FILLER, 3)
    if rng.random() < 0.7:
        words.append(rng.choice(tone))
    rng.shuffle(words)
    return " ".join(words).capitalize() + "."


def make_threads(rng: random.Random) -> list[tuple[str, int]]:
    """(topic, article count) per story thread, covering N_ARTICLES total."""
    topic_names = list(TOPICS)
    threads = []
    remaining = N_ARTICLES
    while remaining > 0:
        size = min(rng.randint(3, 7), remaining)
        threads.append((topic_names[len(threads) % len(topic_names)], size))
        remaining -= size
    return threads


def main() -> None:
    rng = random.Random(SEED)
    publishers = load_publishers()
    start = datetime(2023, 11, 1, tzinfo=timezone.utc)

    with open(OUT, "w", encoding="utf-8") as fh:
        article_index = 0
        for thread_index, (topic, size) in enumerate(make_threads(rng)):
            vocab = TOPICS[topic]
            # a story breaks, then follow-ups appear over the next ~3 days
            thread_start = start + timedelta(
                days=rng.randrange(27), hours=rng.randrange(24), minutes=rng.randrange(60)
            )
            thread_concept = f"{topic}-story-{thread_index:03d}"
            for position in range(size):
                tone = POSITIVE if rng.random() < 0.45 else NEGATIVE
                published = thread_start + timedelta(
                    hours=position * rng.uniform(4.0, 16.0), minutes=rng.randrange(60)
                )
                sentences = [
                    make_sentence(rng, vocab, tone) for _ in range(rng.randint(4, 8))
                ]
                # dominant thread concept; weak topic concepts stay below the
                # default similarity threshold across threads
                concepts = [[thread_concept, 1.0]] + [
                    [c, round(rng.uniform(0.25, 0.45), 3)] for c in rng.sample(vocab, 2)
                ]
                record = {
                    "id": f"syn-{article_index:04d}",
                    "title": f"{topic.capitalize()} story {thread_index} update {position}",
                    "body": " ".join(sentences),
                    "source_name": rng.choice(publishers),
                    "published_at": published.strftime("%Y-%m-%dT%H:%M:%SZ"),
                    "concepts": concepts,
                    "categories": ["Synthetic Conflict"],
                }
                fh.write(json.dumps(record) + "\n")
                article_index += 1
    print(f"wrote {article_index} articles to {OUT}")


if __name__ == "__main__":
    main()
