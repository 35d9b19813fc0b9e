"""Shared fixtures and builders."""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from graphtopics import Corpus, EmbeddingTable, Segment, WordGraph
from graphtopics.corpus import Vocabulary


def make_corpus(token_lists, name="test", labels=None) -> Corpus:
    labels = labels or [None] * len(token_lists)
    segments = tuple(
        Segment(f"s{i}", tuple(tokens), label)
        for i, (tokens, label) in enumerate(zip(token_lists, labels))
    )
    return Corpus(segments, name)


def make_vocab(tf: dict[str, int], num_segments: int = 1) -> Vocabulary:
    """Vocabulary stub where df == 1 and tfidf is unused."""
    import math

    words = tuple(sorted(tf, key=lambda w: (-tf[w], w)))
    df = {w: 1 for w in words}
    tfidf = {w: tf[w] * math.log(num_segments / 1) for w in words}
    return Vocabulary(words=words, tf=dict(tf), df=df, tfidf=tfidf,
                      num_segments=num_segments)


def graph_from(edges, extra_nodes=()) -> WordGraph:
    return WordGraph.from_edges(edges, extra_nodes=extra_nodes)


def unit_graph(pairs, extra_nodes=()) -> WordGraph:
    """Graph with weight 1.0 on every listed pair."""
    return WordGraph.from_edges([(a, b, 1.0) for a, b in pairs], extra_nodes=extra_nodes)


def indexed_graph(n: int, index_pairs) -> WordGraph:
    """Graph over nodes n00..n{n-1} from integer index pairs.

    Zero-padded names keep lexicographic and numeric order identical, so
    oracle indices map straight onto library node names.
    """
    names = [f"n{i:02d}" for i in range(n)]
    return WordGraph.from_edges(
        [(names[u], names[v], 1.0) for u, v in index_pairs],
        extra_nodes=names,
    )


def names_to_indices(words) -> frozenset[int]:
    return frozenset(int(w[1:]) for w in words)


def table_from(vectors: dict[str, list[float]]) -> EmbeddingTable:
    dim = len(next(iter(vectors.values())))
    return EmbeddingTable(dim=dim, vectors={w: np.asarray(v, dtype=np.float64)
                                            for w, v in vectors.items()})


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)


# ---------------------------------------------------------------------------
# Planted-community fixtures for end-to-end runs
# ---------------------------------------------------------------------------

PLANTED_COMMUNITIES = 3
PLANTED_WORDS_PER = 8

# alphabetic-only names: the tokenizer drops digits
_COMMUNITY_PREFIXES = ("red", "green", "blue")
_WORD_SUFFIXES = "abcdefgh"


def planted_words() -> list[list[str]]:
    return [
        [f"{prefix}{suffix}" for suffix in _WORD_SUFFIXES]
        for prefix in _COMMUNITY_PREFIXES[:PLANTED_COMMUNITIES]
    ]


def write_planted_embeddings(path: Path, seed: int = 97) -> list[list[str]]:
    """Word vectors with three orthogonal planted directions plus noise.

    Within-community cosine lands near 1, across-community near 0, so a
    percentile threshold separates the communities cleanly.
    """
    gen = np.random.default_rng(seed)
    communities = planted_words()
    dim = 12
    lines = [f"{PLANTED_COMMUNITIES * PLANTED_WORDS_PER} {dim}"]
    for k, words in enumerate(communities):
        direction = np.zeros(dim)
        direction[k] = 10.0
        for w in words:
            vec = direction + gen.normal(scale=0.15, size=dim)
            lines.append(w + " " + " ".join(repr(float(x)) for x in vec))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return communities


def write_planted_corpus(path: Path, segments: int = 60, seed: int = 13) -> None:
    """Plain-lines corpus whose segments each draw words from one community."""
    gen = np.random.default_rng(seed)
    communities = planted_words()
    lines = []
    for j in range(segments):
        community = communities[j % PLANTED_COMMUNITIES]
        picks = gen.choice(PLANTED_WORDS_PER, size=6, replace=False)
        lines.append(" ".join(community[i] for i in picks))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_planted_config(dir_path: Path, *, seed: int = 7, percentile: float = 70.0,
                         k_max: int = 1, timing: bool = False,
                         baseline_k: int | None = None,
                         min_topics_valid: int = 6,
                         gold_map: str | None = None) -> Path:
    """Write corpus + embeddings + TOML config; returns the config path."""
    corpus_path = dir_path / "corpus.txt"
    emb_path = dir_path / "embeddings.txt"
    write_planted_corpus(corpus_path)
    write_planted_embeddings(emb_path)
    lines = [
        'name = "planted"',
        f"seed = {seed}",
        "[corpus]",
        f'train = "{corpus_path.as_posix()}"',
        'format = "plain-lines"',
        "min_count = 2",
        "holdout_fraction = 0.2",
        "[embeddings]",
        'source = "load"',
        f'path = "{emb_path.as_posix()}"',
        'format = "word2vec-text"',
        "[graph]",
        'prune = "percentile"',
        f"percentile_rank = {percentile}",
        "[topics]",
        f"k_max = {k_max}",
        'representative_mode = "tvs"',
        "min_topic_words = 6",
        f"min_topics_valid = {min_topics_valid}",
        "[report]",
        f"timing = {'true' if timing else 'false'}",
    ]
    if gold_map is not None:
        lines.append(f'gold_map = "{gold_map}"')
    if baseline_k is not None:
        lines += ["[baseline]", f"k = {baseline_k}", 'weighting = "TF"', "restarts = 5"]
    config_path = dir_path / "run.toml"
    config_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return config_path
