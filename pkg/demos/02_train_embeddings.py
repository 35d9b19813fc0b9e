"""Skip-gram training with hierarchical softmax, from scratch, at desk scale.

Run:  python demos/02_train_embeddings.py
"""

import tempfile
from pathlib import Path

import numpy as np

from _common import DEMO_TRAINING, prepare_corpus

from graphtopics import SkipGramHS, build_huffman, cosine, load_embeddings, save_embeddings

train, _, vocab = prepare_corpus()
print(f"training on {len(train)} noun segments, vocabulary of {len(vocab)} words")
print(f"config: window={DEMO_TRAINING.window} epochs={DEMO_TRAINING.epochs} "
      f"dim={DEMO_TRAINING.dim} seed={DEMO_TRAINING.seed}\n")

print("== Huffman coding of the vocabulary ==")
tree = build_huffman(vocab)
most = vocab.words[0]
least = vocab.words[-1]
print(f"most frequent {most!r} (tf={vocab.tf[most]}): {len(tree.codes[most])}-bit code")
print(f"least frequent {least!r} (tf={vocab.tf[least]}): {len(tree.codes[least])}-bit code")
print(f"internal nodes: {tree.num_internal} == vocabulary - 1\n")

model = SkipGramHS(vocab, DEMO_TRAINING)
model.train(train)
table = model.to_table()

print("== hierarchical softmax is a proper distribution ==")
total = sum(model.probability("engine", w) for w in vocab.words)
print(f"sum over the vocabulary of P(w | 'engine') = {total:.12f}\n")

print("== nearest neighbours by cosine ==")
for probe in ("engine", "screen", "seats"):
    sims = sorted(
        ((cosine(table[probe], table[w]), w) for w in vocab.words if w != probe),
        reverse=True,
    )
    neighbours = ", ".join(f"{w} ({s:.2f})" for s, w in sims[:4])
    print(f"  {probe:<8} -> {neighbours}")
print()

print("== word2vec text round trip ==")
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "vectors.txt"
    save_embeddings(table, path, "word2vec-text")
    loaded = load_embeddings(path, "word2vec-text")
    identical = all(np.array_equal(table[w], loaded[w]) for w in vocab.words)
    print(f"wrote {len(loaded)} vectors, reload exact: {identical}")
