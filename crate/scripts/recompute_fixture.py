#!/usr/bin/env python3
"""Recomputes the bundled fixture's expected results without the Rust code.

Uses snowballstemmer for stemming, networkx for weighted betweenness and the
vaderSentiment package's lexicon and word lists. Writes
crates/core/tests/fixtures/brands/expected_results.csv.

    pip install snowballstemmer networkx vaderSentiment tomli
    python3 scripts/recompute_fixture.py
"""

import csv
import math
import os
import re
import statistics
from datetime import datetime, timezone

import networkx as nx
import snowballstemmer
import tomli
from vaderSentiment import vaderSentiment as vader

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIXTURE = os.path.join(ROOT, "crates", "core", "tests", "fixtures", "brands")
STOPWORDS = os.path.join(ROOT, "crates", "core", "data", "stopwords", "english.txt")

URL = re.compile(r"(?i)(?:\b[a-z][a-z0-9+.\-]*://|\bwww\.)\S*")
STEM = snowballstemmer.stemmer("english")


def parse_date(s):
    if len(s) == 10:
        return datetime.strptime(s, "%Y-%m-%d").replace(tzinfo=timezone.utc)
    return datetime.fromisoformat(s.replace("Z", "+00:00"))


def load_stopwords():
    with open(STOPWORDS, encoding="utf-8") as f:
        return {w.strip().lower() for w in f if w.strip() and not w.startswith("#")}


def normalize(text, stop):
    text = URL.sub(" ", text)
    text = "".join(c if c.isalnum() else " " for c in text)
    out = []
    for word in text.split():
        w = word.lower()
        if w in stop:
            continue
        s = STEM.stemWord(w)
        if s and s not in stop:
            out.append(s)
    return out


def alias_table(brands, stop):
    table = {}
    for b in brands:
        for alias in b["aliases"]:
            table[tuple(normalize(alias, stop))] = b["id"]
    return table


def collapse(tokens, table):
    longest = max(len(k) for k in table)
    out, i = [], 0
    while i < len(tokens):
        for n in range(min(longest, len(tokens) - i), 0, -1):
            key = tuple(tokens[i : i + n])
            if key in table:
                out.append(table[key])
                i += n
                break
        else:
            out.append(tokens[i])
            i += 1
    return out


def build_graph(streams, cooc_range, min_cooc):
    freq, edges = {}, {}
    for tokens, weight in streams:
        if weight == 0:
            continue
        for p, t in enumerate(tokens):
            freq[t] = freq.get(t, 0.0) + weight
            for u in tokens[p + 1 : p + 1 + cooc_range]:
                if u != t:
                    key = tuple(sorted((t, u)))
                    edges[key] = edges.get(key, 0.0) + weight
    g = nx.Graph()
    for t, f in freq.items():
        g.add_node(t, freq=f)
    for (a, b), w in edges.items():
        if w >= min_cooc:
            g.add_edge(a, b, weight=w, length=1.0 / w)
    return g


def zscore(values):
    mean = statistics.fmean(values)
    sd = statistics.pstdev(values)
    return lambda x: 0.0 if sd == 0 else (x - mean) / sd


def minmax(values):
    lo, hi = min(values), max(values)
    return lambda x: 0.0 if hi == lo else min(1.0, max(0.0, (x - lo) / (hi - lo)))


def split_sentences(text):
    out, start = [], 0
    for i, c in enumerate(text):
        if c in ".!?" and (i + 1 == len(text) or text[i + 1].isspace()):
            s = text[start : i + 1].strip()
            if s:
                out.append(s)
            start = i + 1
    rest = text[start:].strip()
    if rest:
        out.append(rest)
    return out


def load_lexicon():
    path = os.path.join(os.path.dirname(vader.__file__), "vader_lexicon.txt")
    lex = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            parts = line.rstrip("\r\n").split("\t")
            if len(parts) >= 2:
                lex[parts[0]] = float(parts[1])
    return lex


def sentence_score(sentence, lex):
    tokens = []
    for word in sentence.split():
        low = word.lower()
        stripped = low.strip("".join(c for c in set(low) if not c.isalnum()))
        tokens.append(stripped or low)
    negate = {w.lower() for w in vader.NEGATE}
    total = 0.0
    for i, t in enumerate(tokens):
        if t in vader.BOOSTER_DICT or t not in lex:
            continue
        v = lex[t]
        window = tokens[max(0, i - 3) : i]
        if any(w in negate for w in window):
            v *= vader.N_SCALAR
        for w in window:
            if w in vader.BOOSTER_DICT:
                v = math.copysign(abs(v) + vader.BOOSTER_DICT[w], v)
        total += v
    if total != 0:
        bangs = len(sentence.rstrip()) - len(sentence.rstrip().rstrip("!"))
        total += math.copysign(0.292 * min(bangs, 3), total)
    return total / math.sqrt(total * total + 15)


def main():
    with open(os.path.join(FIXTURE, "config.toml"), "rb") as f:
        cfg = tomli.load(f)
    stop = load_stopwords()
    table = alias_table(cfg["brands"], stop)
    brands = [b["id"] for b in cfg["brands"]]
    lex = load_lexicon()

    with open(os.path.join(FIXTURE, cfg["corpus"]), encoding="utf-8", newline="") as f:
        docs = list(csv.DictReader(f))

    rows = []
    for iv in cfg["intervals"]:
        start, end = parse_date(iv["start"]), parse_date(iv["end"])
        bucket = [d for d in docs if start <= parse_date(d["date"]) < end]
        streams = [(collapse(normalize(d["text"], stop), table), float(d["weight"])) for d in bucket]
        g = build_graph(streams, cfg["cooc_range"], cfg.get("min_cooc", 0))
        if g.number_of_nodes() == 0:
            continue
        n = g.number_of_nodes()
        nodes = sorted(g.nodes)
        prev = {t: g.nodes[t]["freq"] for t in nodes}
        div = {t: sum(math.log10((n - 1) / g.degree(j)) for j in g.neighbors(t)) for t in nodes}
        conn = nx.betweenness_centrality(g, weight="length", normalized=True)

        dims = [prev, div, conn]
        std = [zscore([d[t] for t in nodes]) for d in dims]
        unit = [minmax([d[t] for t in nodes]) for d in dims]
        raw = {b: [d.get(b, 0.0) for d in dims] for b in brands}
        rescaled = {b: sum(unit[k](raw[b][k]) for k in range(3)) for b in brands}
        total = sum(rescaled.values())

        for b in brands:
            s = [std[k](raw[b][k]) for k in range(3)]
            num = den = 0.0
            count = 0
            for d in bucket:
                w = float(d["weight"])
                if w <= 0:
                    continue
                for sent in split_sentences(d["text"]):
                    if b in collapse(normalize(sent, stop), table):
                        num += w * sentence_score(sent, lex)
                        den += w
                        count += 1
            rows.append(
                {
                    "interval": iv["start"][:10],
                    "brand": b,
                    "prev_raw": raw[b][0],
                    "div_raw": raw[b][1],
                    "conn_raw": raw[b][2],
                    "prev_std": s[0],
                    "div_std": s[1],
                    "conn_std": s[2],
                    "sbs": s[0] + s[1] + s[2],
                    "prop_sbs": rescaled[b] / total if total > 0 else 1 / len(brands),
                    "sentiment": num / den if den > 0 else 0.0,
                    "sentences": count,
                }
            )

    out = os.path.join(FIXTURE, "expected_results.csv")
    with open(out, "w", encoding="utf-8", newline="") as f:
        w = csv.DictWriter(f, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in r.items()})
    print(f"wrote {len(rows)} rows to {os.path.relpath(out, ROOT)}")


if __name__ == "__main__":
    main()
