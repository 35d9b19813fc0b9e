"""From a pruned word graph to k-edge-connected components to topics.

Run:  python demos/04_kcomponent_topics.py
"""

from _common import prepare_corpus, train_demo_embeddings

from graphtopics import (
    build_complete_graph,
    build_hierarchy,
    components_to_topics,
    edge_connectivity,
    global_min_cut,
    prune_percentile,
    representatives_by_degree,
    representatives_by_tvs,
)

train, _, vocab = prepare_corpus()
table = train_demo_embeddings(train, vocab)
pruned = prune_percentile(build_complete_graph(vocab, table), 80.0)
print(f"pruned graph: {pruned.number_of_nodes()} nodes, {pruned.number_of_edges()} edges\n")

print("== component hierarchy (levels 1..2) ==")
hierarchy = build_hierarchy(pruned, 2)
for level in (1, 2):
    comps = hierarchy.components(level)
    print(f"level {level}: {len(comps)} component(s), "
          f"sizes {[len(c.members) for c in comps]}")
    for comp in comps:
        marker = "" if comp.parent is None else "   (nested in its level-1 parent)"
        print(f"   {sorted(comp.members)[:6]}...{marker}")
print()

print("== edge connectivity of each level-1 component ==")
for comp in hierarchy.components(1):
    sub = pruned.subgraph(comp.members)
    cut = global_min_cut(sub)
    print(f"  {len(comp.members)} nodes: connectivity={edge_connectivity(sub)}, "
          f"one minimum cut separates {sorted(cut.side_a)[:3]}... "
          f"({cut.value} edge(s))")
print()

print("== topics with ranked representatives ==")
topics = components_to_topics([c.members for c in hierarchy.components(1)], min_words=6)
for topic in topics:
    by_deg = representatives_by_degree(topic, pruned, top_n=5)
    by_tvs = representatives_by_tvs(topic, table, top_n=5)
    print(f"topic of {len(topic.members)} words")
    print(f"   deg: {', '.join(by_deg)}")
    print(f"   tvs: {', '.join(by_tvs)}")
