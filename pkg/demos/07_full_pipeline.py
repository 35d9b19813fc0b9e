"""The whole pipeline from one TOML config, plus the emitted report files.

Run:  python demos/07_full_pipeline.py
The same run is available from the command line:
  graphtopics extract --config <config.toml> --out <dir>
  graphtopics baseline-kmeans --config <config.toml> --out <dir>
"""

import json
import tempfile
from pathlib import Path

from _common import POSTAGS, REVIEWS

from graphtopics import emit_report, load_config, run_kmeans_baseline, run_pipeline

CONFIG_TEMPLATE = """\
name = "bundled-reviews"
seed = 11

[corpus]
train = "{reviews}"
format = "labeled-tsv"
pos_map = "{postags}"
pos_mode = "nouns"
min_count = 2
holdout_fraction = 0.2

[embeddings]
source = "train"
window = 5
epochs = 150
dim = 24

[graph]
prune = "percentile"
percentile_rank = 80.0

[topics]
k_max = 1
representative_mode = "tvs"
min_topic_words = 6
min_topics_valid = 3

[baseline]
k = 3
weighting = "TF"
restarts = 10

[report]
timing = true
"""

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    config_path = tmp / "run.toml"
    config_path.write_text(CONFIG_TEMPLATE.format(
        reviews=REVIEWS.resolve().as_posix(),
        postags=POSTAGS.resolve().as_posix()))
    config = load_config(config_path)

    print("== k-component extraction ==")
    report = run_pipeline(config)
    print(f"topics={report.topic_count} valid={report.valid} "
          f"time_p={report.time_p_seconds:.3f}s (CPU, clustering stage only)")
    for topic in report.scored_topics:
        print(f"  {topic.id}: {', '.join(topic.representatives)}")
    coh = report.coherence
    print(f"means: umass={coh.mean_umass:+.3f} cv_in={coh.mean_cv_intrinsic:.3f} "
          f"cv_ex={coh.mean_cv_extrinsic:.3f}\n")

    print("== emitted files ==")
    out = tmp / "out"
    for path in emit_report(report, out):
        print(f"  {path.name}: {path.stat().st_size} bytes")
    run_payload = json.loads((out / "run.json").read_text())
    print(f"run.json says topics_per_level={run_payload['topics_per_level']} "
          f"counts.pruned_edges={run_payload['counts']['pruned_edges']}\n")

    print("== weighted K-Means baseline on the same inputs ==")
    baseline = run_kmeans_baseline(config)
    print(f"clusters={baseline.topic_count} time_p={baseline.time_p_seconds:.3f}s")
    for topic in baseline.scored_topics:
        print(f"  {topic.id}: {', '.join(topic.representatives)}")
    bcoh = baseline.coherence
    print(f"means: umass={bcoh.mean_umass:+.3f} cv_in={bcoh.mean_cv_intrinsic:.3f} "
          f"cv_ex={bcoh.mean_cv_extrinsic:.3f}")
