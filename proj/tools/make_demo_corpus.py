#!/usr/bin/env python3
"""Regenerate data/demo_corpus.jsonl, a small tweet corpus for smoke runs.

Five topics share a vocabulary each, so toy embeddings cluster by topic.
A few tweets exercise the cleaner: URLs, mentions, retweets, elongated
words, a tweet without hashtags and a repeated retweet.
"""

import json
import random
import sys

TOPICS = {
    "sport": (
        ["match", "goal", "team", "season", "coach", "league", "win", "fans", "stadium", "score"],
        ["#football", "#soccer", "#sport", "#premierleague", "#goal", "#matchday"],
    ),
    "health": (
        ["vaccine", "cases", "hospital", "masks", "lockdown", "doctors", "virus", "testing", "nurses", "health"],
        ["#covid19", "#coronavirus", "#stayhome", "#vaccine", "#pandemic", "#health"],
    ),
    "climate": (
        ["climate", "warming", "carbon", "emissions", "planet", "energy", "solar", "floods", "heatwave", "green"],
        ["#climatechange", "#climate", "#globalwarming", "#sustainability", "#renewables", "#environment"],
    ),
    "tech": (
        ["app", "update", "phone", "release", "code", "cloud", "data", "developers", "startup", "software"],
        ["#tech", "#ai", "#programming", "#startup", "#cloud", "#developer"],
    ),
    "food": (
        ["recipe", "dinner", "cake", "cooking", "pasta", "kitchen", "breakfast", "coffee", "bread", "delicious"],
        ["#food", "#foodie", "#recipe", "#baking", "#cooking", "#yummy"],
    ),
}

FILLERS = ["today", "really", "great", "new", "big", "love", "tonight", "week", "morning", "people"]


def tweet(rng, topic):
    words, tags = TOPICS[topic]
    text = rng.sample(words, 4) + rng.sample(FILLERS, 2)
    rng.shuffle(text)
    chosen = rng.sample(tags, rng.choice([1, 2, 2, 3]))
    return " ".join(text).capitalize() + " " + " ".join(chosen)


def main(path):
    rng = random.Random(2024)
    topics = list(TOPICS)
    rows = []
    for i in range(54):
        rows.append({"id": f"d{i:03d}", "text": tweet(rng, topics[i % len(topics)])})

    # Cleaner edge cases.
    rows[3]["text"] = "@coach_fan " + rows[3]["text"] + " https://t.co/abc123"
    rows[8]["text"] = "Sooooo happpppy with the " + rows[8]["text"] + "!!!"
    rows[12]["text"] = rows[12]["text"] + " via www.example.com"
    extra = [
        {"id": "d054", "text": "Just a quiet morning with coffee and bread, no tags at all"},
        {"id": "d055", "text": "RT @newsdesk: " + rows[6]["text"], "retweet": True},
        {"id": "d056", "text": "RT @newsdesk: " + rows[6]["text"], "retweet": True},
        {"id": "d057", "text": "Goal!!! What a match for the team tonight #Football #MatchDay"},
        {"id": "d058", "text": "Masks and testing still matter, thank the nurses #COVID19 #StayHome"},
        {"id": "d059", "text": "Solar energy beats carbon every time #ClimateChange #Renewables"},
    ]
    rows.extend(extra)
    with open(path, "w", encoding="utf-8") as out:
        for row in rows:
            out.write(json.dumps(row, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/demo_corpus.jsonl")
