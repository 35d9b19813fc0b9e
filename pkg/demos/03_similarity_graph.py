"""Building the complete cosine-similarity word graph and pruning it.

Run:  python demos/03_similarity_graph.py
"""

import numpy as np

from _common import prepare_corpus, train_demo_embeddings

from graphtopics import build_complete_graph, dump_edge_list, prune_percentile, prune_top_m

train, _, vocab = prepare_corpus()
table = train_demo_embeddings(train, vocab)

print("== complete graph over the embedded vocabulary ==")
g = build_complete_graph(vocab, table)
n = g.number_of_nodes()
print(f"{n} nodes, {g.number_of_edges()} edges (= n(n-1)/2 = {n * (n - 1) // 2})")
weights = g.edge_w
print("edge-weight percentiles:",
      " ".join(f"p{p}={np.percentile(weights, p):.2f}" for p in (10, 50, 80, 95)))
print()

print("== percentile pruning ==")
for rank in (50.0, 80.0, 95.0):
    pruned = prune_percentile(g, rank)
    print(f"  percentile {rank:>4}: {pruned.number_of_nodes():>3} nodes, "
          f"{pruned.number_of_edges():>4} edges kept")
pruned = prune_percentile(g, 80.0)
print("(edges below the threshold go first; nodes isolated by the cut are removed)\n")

print("== top-m pruning for comparison ==")
for m in (2, 4):
    topm = prune_top_m(g, m)
    print(f"  m={m}: {topm.number_of_nodes()} nodes, {topm.number_of_edges()} edges "
          "(an edge survives if it is in either endpoint's top-m)")
print()

print("== edge list dump (first 6 rows) ==")
for line in dump_edge_list(pruned).splitlines()[:6]:
    print(" ", line)
