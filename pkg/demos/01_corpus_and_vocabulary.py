"""Loading a corpus, POS filtering, vocabulary statistics, holdout splits.

Run:  python demos/01_corpus_and_vocabulary.py
"""

from _common import POSTAGS, REVIEWS

from graphtopics import (
    build_vocabulary,
    filter_pos,
    load_corpus,
    load_pos_map,
    split_holdout,
    tokenize,
)

print("== tokenisation ==")
sample = "The engine, 2.0L turbo!"
print(f"{sample!r} -> {tokenize(sample)}")
print("(lowercased alphabetic runs; digits and punctuation never survive)\n")

print("== loading the bundled review corpus ==")
corpus = load_corpus(REVIEWS, "labeled-tsv")
print(f"{len(corpus)} segments from {REVIEWS.name}")
first = corpus.segments[0]
print(f"first segment: id={first.id} gold={first.gold_label}")
print(f"tokens: {first.tokens[:10]} ...\n")

print("== POS filtering (keep nouns) ==")
pos_map = load_pos_map(POSTAGS)
nouns = filter_pos(corpus, pos_map, "nouns")
print(f"tokens before/after on {first.id}: "
      f"{len(first.tokens)} -> {len(nouns.segments[0].tokens)}")
print(f"noun tokens: {nouns.segments[0].tokens}\n")

print("== vocabulary statistics ==")
vocab = build_vocabulary(nouns, min_count=2)
print(f"{len(vocab)} words with corpus frequency >= 2")
print("top 8 by term frequency:")
for word in vocab.words[:8]:
    print(f"  {word:<14} tf={vocab.tf[word]:<3} df={vocab.df[word]:<3} "
          f"tfidf={vocab.tfidf[word]:.3f}")
print()

print("== holdout split (seeded, deterministic) ==")
train, holdout = split_holdout(nouns, 0.2, seed=11)
again = split_holdout(nouns, 0.2, seed=11)
print(f"train={len(train)} holdout={len(holdout)} segments")
print(f"same seed reproduces the split: {train.segment_ids() == again[0].segment_ids()}")
print(f"holdout ids: {holdout.segment_ids()}")
