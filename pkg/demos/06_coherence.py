"""Scoring topics with u_mass and c_v, intrinsically and extrinsically.

Run:  python demos/06_coherence.py
"""

from _common import prepare_corpus, train_demo_embeddings

from graphtopics import (
    Topic,
    build_complete_graph,
    build_hierarchy,
    collect_stats,
    components_to_topics,
    cv,
    evaluate,
    prune_percentile,
    representatives_by_tvs,
    umass,
)

train, holdout, vocab = prepare_corpus()
table = train_demo_embeddings(train, vocab)
pruned = prune_percentile(build_complete_graph(vocab, table), 80.0)
topics = components_to_topics(
    [c.members for c in build_hierarchy(pruned, 1).components(1)], min_words=6)
for i, topic in enumerate(topics):
    topic.id = f"k1-{i}"
    topic.ranking = tuple(representatives_by_tvs(topic, table, top_n=len(topic.members)))
    topic.representatives = topic.ranking[:5]

print("== direct scoring of one topic ==")
words = list(topics[0].ranking[:10])
doc_stats = collect_stats(train, "document", vocabulary=set(words))
win_stats = collect_stats(train, "window", window_size=110, vocabulary=set(words))
print(f"topic words: {words}")
print(f"u_mass (document co-occurrence, higher is better): {umass(words, doc_stats):.4f}")
print(f"c_v (boolean sliding window, in [0,1]):            {cv(words, win_stats):.4f}\n")

print("== full report: intrinsic (train) vs extrinsic (holdout) ==")
report = evaluate(topics, train, holdout)
for tid in sorted(report.per_topic):
    s = report.per_topic[tid]
    print(f"  {tid}: umass={s.umass:+.3f} cv_in={s.cv_in:.3f} cv_ex={s.cv_ex:.3f}")
print(f"means: umass={report.mean_umass:+.3f} "
      f"cv_in={report.mean_cv_intrinsic:.3f} cv_ex={report.mean_cv_extrinsic:.3f}\n")

print("== topics absent from the reference corpus are undefined, not zero ==")
ghost = Topic(members=frozenset({"flux", "capacitor", "gigawatt", "plutonium",
                                 "delorean", "hoverboard"}),
              source="kcomponent", level=1, id="ghost",
              ranking=("flux", "capacitor", "gigawatt", "plutonium",
                       "delorean", "hoverboard"))
ghost_report = evaluate(topics + [ghost], train, holdout)
print(f"ghost topic cv_in: {ghost_report.per_topic['ghost'].cv_in} "
      f"(excluded from the means, counted as undefined: "
      f"{ghost_report.undefined_cv_in})")
print(f"means unchanged: {ghost_report.mean_cv_intrinsic == report.mean_cv_intrinsic}\n")

print("== CSV emission ==")
for line in report.to_csv().splitlines():
    print(" ", line)
