"""The weighted K-Means baseline on the same embeddings.

Run:  python demos/05_kmeans_baseline.py
"""

import numpy as np

from _common import prepare_corpus, train_demo_embeddings

from graphtopics import KMeansConfig, kmeans_weighted
from graphtopics.topics import kmeans_fit

train, _, vocab = prepare_corpus()
table = train_demo_embeddings(train, vocab)

print("== TF-weighted K-Means, k=3 ==")
config = KMeansConfig(k=3, weighting="TF", seed=11, restarts=10)
topics = kmeans_weighted(vocab, table, config, min_words=6)
for topic in topics:
    print(f"cluster {topic.cluster_id}: {len(topic.members)} words, "
          f"representatives: {', '.join(topic.representatives)}")
print()

print("== what the restarts saw ==")
words = [w for w in vocab.words if w in table]
points = table.matrix(words)
weights = np.array([vocab.tf[w] for w in words], dtype=float)
result = kmeans_fit(points, weights, k=3, seed=11, restarts=10)
print(f"best restart: #{result.restart}, weighted WCSS {result.wcss:.4f}")
print(f"objective per Lloyd iteration (never increases): "
      f"{[round(x, 2) for x in result.wcss_trace]}")
print()

print("== k must be chosen up front (unlike the k-component route) ==")
for k in (2, 3, 4):
    r = kmeans_fit(points, weights, k=k, seed=11, restarts=10)
    sizes = np.bincount(r.labels, minlength=k).tolist()
    print(f"  k={k}: cluster sizes {sizes}, WCSS {r.wcss:.1f}")
