"""Shared setup for the demo scripts: the bundled review corpus, noun
filtering, and a quick embedding training run."""

from pathlib import Path

from graphtopics import (
    SkipGramConfig,
    build_vocabulary,
    filter_pos,
    load_corpus,
    load_pos_map,
    split_holdout,
    train_skipgram_hs,
)

DATA_DIR = Path(__file__).parent / "data"
REVIEWS = DATA_DIR / "reviews.tsv"
POSTAGS = DATA_DIR / "postags.tsv"
SEED = 11

# small corpus, so a few hundred epochs stay under a second
DEMO_TRAINING = SkipGramConfig(window=5, epochs=150, dim=24, seed=SEED)


def prepare_corpus():
    """Load the bundled reviews, keep nouns, split off a holdout."""
    corpus = load_corpus(REVIEWS, "labeled-tsv")
    pos_map = load_pos_map(POSTAGS)
    nouns = filter_pos(corpus, pos_map, "nouns")
    train, holdout = split_holdout(nouns, 0.2, seed=SEED)
    vocab = build_vocabulary(train, min_count=2)
    return train, holdout, vocab


def train_demo_embeddings(train, vocab):
    return train_skipgram_hs(train, vocab, DEMO_TRAINING)
