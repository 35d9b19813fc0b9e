"""End-to-end orchestration: configuration, the extraction pipeline, gold
mapping, and report emission.

The clustering stage (graph pruning, decomposition, topic formation) is
timed with process CPU seconds; embedding preparation and coherence scoring
stay outside the timer so runs of different methods can be compared on
their clustering cost alone.
"""

from __future__ import annotations

import dataclasses
import json
import os
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover - depends on interpreter
    import tomli as tomllib

from . import coherence as coherence_mod
from . import corpus as corpus_mod
from . import embeddings as embeddings_mod
from . import kcomponents as kcomponents_mod
from . import simgraph as simgraph_mod
from . import topics as topics_mod
from .errors import ConfigError, DataError, PipelineStageError

PRUNE_STRATEGIES = ("percentile", "top_m")
EMBEDDING_SOURCES = ("train", "load")
REPRESENTATIVE_MODES = ("deg", "tvs")


@dataclass
class PipelineConfig:
    """Everything one run needs; mirrors the TOML configuration file."""

    corpus_path: str
    corpus_format: str = "plain-lines"
    name: str = ""
    pos_map_path: str | None = None
    pos_mode: str = "all"
    min_count: int = 5
    holdout_fraction: float = 0.2
    embedding_source: str = "train"
    embedding_path: str | None = None
    embedding_format: str = "word2vec-text"
    skipgram: embeddings_mod.SkipGramConfig = field(
        default_factory=embeddings_mod.SkipGramConfig)
    prune: str = "percentile"
    percentile_rank: float = 80.0
    top_m: int = 10
    node_cap: int = simgraph_mod.DEFAULT_NODE_CAP
    k_max: int = 1
    representative_mode: str = "tvs"
    top_n: int = topics_mod.DEFAULT_TOP_N
    min_topic_words: int = topics_mod.DEFAULT_MIN_WORDS
    min_topics_valid: int = 6
    baseline: topics_mod.KMeansConfig | None = None
    gold_map_path: str | None = None
    seed: int = 0
    timing_enabled: bool = True

    def validate(self) -> None:
        if not self.corpus_path:
            raise ConfigError("corpus path is required")
        if self.corpus_format not in corpus_mod.CORPUS_FORMATS:
            raise ConfigError(f"unknown corpus format {self.corpus_format!r}")
        if self.pos_mode not in corpus_mod.POS_MODES:
            raise ConfigError(f"unknown pos_mode {self.pos_mode!r}")
        if self.pos_mode == "nouns" and not self.pos_map_path:
            raise ConfigError("pos_mode 'nouns' requires a pos_map path")
        if self.embedding_source not in EMBEDDING_SOURCES:
            raise ConfigError(f"embedding source must be one of {EMBEDDING_SOURCES}")
        if self.embedding_source == "load" and not self.embedding_path:
            raise ConfigError("embedding source 'load' requires an embedding path")
        if self.embedding_format not in embeddings_mod.EMBEDDING_FORMATS:
            raise ConfigError(
                f"embedding format must be one of {embeddings_mod.EMBEDDING_FORMATS}")
        if self.prune not in PRUNE_STRATEGIES:
            raise ConfigError(f"prune strategy must be one of {PRUNE_STRATEGIES}")
        if self.prune == "percentile" and not 0.0 <= self.percentile_rank <= 100.0:
            raise ConfigError("percentile_rank must be in [0, 100]")
        if self.prune == "top_m" and self.top_m < 1:
            raise ConfigError("top_m must be >= 1")
        if not 0.0 < self.holdout_fraction < 1.0:
            raise ConfigError("holdout_fraction must be in (0, 1)")
        if self.k_max < 1:
            raise ConfigError("k_max must be >= 1")
        if self.representative_mode not in REPRESENTATIVE_MODES:
            raise ConfigError(f"representative_mode must be one of {REPRESENTATIVE_MODES}")
        for name in ("min_count", "top_n", "min_topic_words", "min_topics_valid"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1")

    def echo(self) -> dict:
        """JSON-safe dump of the configuration for run.json."""
        out = dataclasses.asdict(self)
        return out


def load_config(path: str | Path, seed_override: int | None = None) -> PipelineConfig:
    """Read a TOML configuration file into a :class:`PipelineConfig`.

    Flag values passed by the CLI override the file (currently the seed).
    Unknown keys are rejected so typos fail loudly.
    """
    path = Path(path)
    try:
        raw = tomllib.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: invalid TOML: {exc}") from exc

    known_sections = {"corpus", "embeddings", "graph", "topics", "baseline", "report"}
    top_keys = {"name", "seed"}
    for key in raw:
        if key not in known_sections | top_keys:
            raise ConfigError(f"{path}: unknown configuration key {key!r}")

    def section(name: str, allowed: set[str]) -> dict:
        data = raw.get(name, {})
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: section [{name}] must be a table")
        for key in data:
            if key not in allowed:
                raise ConfigError(f"{path}: unknown key {key!r} in [{name}]")
        return data

    corpus_sec = section("corpus", {"train", "format", "pos_map", "pos_mode",
                                    "min_count", "holdout_fraction"})
    emb_sec = section("embeddings", {"source", "path", "format", "window",
                                     "epochs", "dim", "initial_lr"})
    graph_sec = section("graph", {"prune", "percentile_rank", "m", "node_cap"})
    topics_sec = section("topics", {"k_max", "representative_mode", "top_n",
                                    "min_topic_words", "min_topics_valid"})
    baseline_sec = section("baseline", {"k", "weighting", "max_iter", "restarts"})
    report_sec = section("report", {"gold_map", "timing"})

    seed = seed_override if seed_override is not None else int(raw.get("seed", 0))
    skipgram = embeddings_mod.SkipGramConfig(
        window=int(emb_sec.get("window", 15)),
        epochs=int(emb_sec.get("epochs", 400)),
        dim=int(emb_sec.get("dim", 200)),
        initial_lr=float(emb_sec.get("initial_lr", 0.025)),
        seed=seed,
    )
    baseline = None
    if baseline_sec:
        baseline = topics_mod.KMeansConfig(
            k=int(baseline_sec["k"]),
            weighting=str(baseline_sec.get("weighting", "TF")),
            seed=seed,
            max_iter=int(baseline_sec.get("max_iter", 300)),
            restarts=int(baseline_sec.get("restarts", 10)),
        )
    config = PipelineConfig(
        corpus_path=str(corpus_sec.get("train", "")),
        corpus_format=str(corpus_sec.get("format", "plain-lines")),
        name=str(raw.get("name", "")),
        pos_map_path=corpus_sec.get("pos_map"),
        pos_mode=str(corpus_sec.get("pos_mode", "all")),
        min_count=int(corpus_sec.get("min_count", 5)),
        holdout_fraction=float(corpus_sec.get("holdout_fraction", 0.2)),
        embedding_source=str(emb_sec.get("source", "train")),
        embedding_path=emb_sec.get("path"),
        embedding_format=str(emb_sec.get("format", "word2vec-text")),
        skipgram=skipgram,
        prune=str(graph_sec.get("prune", "percentile")),
        percentile_rank=float(graph_sec.get("percentile_rank", 80.0)),
        top_m=int(graph_sec.get("m", 10)),
        node_cap=int(graph_sec.get("node_cap", simgraph_mod.DEFAULT_NODE_CAP)),
        k_max=int(topics_sec.get("k_max", 1)),
        representative_mode=str(topics_sec.get("representative_mode", "tvs")),
        top_n=int(topics_sec.get("top_n", topics_mod.DEFAULT_TOP_N)),
        min_topic_words=int(topics_sec.get("min_topic_words", topics_mod.DEFAULT_MIN_WORDS)),
        min_topics_valid=int(topics_sec.get("min_topics_valid", 6)),
        baseline=baseline,
        gold_map_path=report_sec.get("gold_map"),
        seed=seed,
        timing_enabled=bool(report_sec.get("timing", True)),
    )
    config.validate()
    return config


@dataclass
class RunReport:
    """Everything a run emits: topics, coherence, validity, timing."""

    method: str
    config_echo: dict
    seed: int
    topics_by_level: dict[int, list[topics_mod.Topic]]
    scored_topics: list[topics_mod.Topic]
    coherence: coherence_mod.CoherenceReport
    topic_count: int
    gold_count: int
    valid: bool
    time_p_seconds: float
    counts: dict[str, int]
    unmapped_topics: list[str] = field(default_factory=list)


@contextmanager
def _stage(name: str):
    try:
        yield
    except PipelineStageError:
        raise
    except Exception as exc:
        raise PipelineStageError(name, exc) from exc


def _prepare_inputs(config: PipelineConfig):
    """Shared front half: corpus, POS filter, split, vocabulary, embeddings."""
    with _stage("corpus-load"):
        corp = corpus_mod.load_corpus(config.corpus_path, config.corpus_format,
                                      name=config.name or None)
    with _stage("pos-filter"):
        if config.pos_mode == "nouns":
            pos_map = corpus_mod.load_pos_map(config.pos_map_path)
            corp = corpus_mod.filter_pos(corp, pos_map, "nouns")
        else:
            corp = corpus_mod.filter_pos(corp, None, "all")
    with _stage("holdout-split"):
        train, holdout = corpus_mod.split_holdout(corp, config.holdout_fraction, config.seed)
    with _stage("vocabulary"):
        vocab = corpus_mod.build_vocabulary(train, config.min_count)
    with _stage("embeddings"):
        if config.embedding_source == "load":
            table = embeddings_mod.load_embeddings(config.embedding_path,
                                                   config.embedding_format)
        else:
            table = embeddings_mod.train_skipgram_hs(train, vocab, config.skipgram)
    embedded = sum(1 for w in vocab.words if w in table)
    counts = {
        "segments": len(corp),
        "train_segments": len(train),
        "holdout_segments": len(holdout),
        "vocabulary_size": len(vocab),
        "embedded_words": embedded,
        "words_without_embedding": len(vocab) - embedded,
    }
    return train, holdout, vocab, table, counts


def _rank_topic(topic: topics_mod.Topic, mode: str, graph, table, top_n: int) -> None:
    if mode == "deg":
        ranking = topics_mod.representatives_by_degree(topic, graph, top_n=len(topic.members))
    else:
        ranking = topics_mod.representatives_by_tvs(topic, table, top_n=len(topic.members))
    topic.ranking = tuple(ranking)
    topic.representatives = tuple(ranking[:top_n])


def _process_time(enabled: bool) -> float:
    return time.process_time() if enabled else 0.0


def run_pipeline(config: PipelineConfig) -> RunReport:
    """The k-component extraction pipeline.

    Topics at level ``k_max`` are the run's result and the only ones
    scored; lower hierarchy levels are kept in the report for inspection.
    A run with fewer than ``min_topics_valid`` topics is marked invalid but
    still reported.
    """
    config.validate()
    train, holdout, vocab, table, counts = _prepare_inputs(config)

    with _stage("graph-build"):
        complete = simgraph_mod.build_complete_graph(vocab, table, node_cap=config.node_cap)
    counts["complete_nodes"] = complete.number_of_nodes()
    counts["complete_edges"] = complete.number_of_edges()

    t0 = _process_time(config.timing_enabled)
    with _stage("graph-prune"):
        if config.prune == "percentile":
            pruned = simgraph_mod.prune_percentile(complete, config.percentile_rank)
        else:
            pruned = simgraph_mod.prune_top_m(complete, config.top_m)
    counts["pruned_nodes"] = pruned.number_of_nodes()
    counts["pruned_edges"] = pruned.number_of_edges()

    with _stage("decomposition"):
        hierarchy = kcomponents_mod.build_hierarchy(pruned, config.k_max)

    with _stage("topic-formation"):
        topics_by_level: dict[int, list[topics_mod.Topic]] = {}
        dropped_small = 0
        for level in range(1, config.k_max + 1):
            comps = [c.members for c in hierarchy.components(level)]
            level_topics = topics_mod.components_to_topics(
                comps, min_words=config.min_topic_words, level=level)
            dropped_small += len(comps) - len(level_topics)
            for i, topic in enumerate(level_topics):
                topic.id = f"k{level}-{i}"
                _rank_topic(topic, config.representative_mode, pruned, table, config.top_n)
            topics_by_level[level] = level_topics
    time_p = _process_time(config.timing_enabled) - t0
    counts["components_below_min_words"] = dropped_small

    scored = topics_by_level[config.k_max]
    with _stage("coherence"):
        if scored:
            report = coherence_mod.evaluate(scored, train, holdout, time_p_seconds=time_p)
        else:
            report = coherence_mod.CoherenceReport(
                per_topic={}, mean_umass=None, mean_cv_intrinsic=None,
                mean_cv_extrinsic=None, undefined_umass=0, undefined_cv_in=0,
                undefined_cv_ex=0, time_p_seconds=time_p)

    gold_count = 0
    unmapped: list[str] = []
    if config.gold_map_path:
        with _stage("gold-mapping"):
            gold_count, unmapped = map_to_gold(scored, config.gold_map_path)

    return RunReport(
        method="kcomponents",
        config_echo=config.echo(),
        seed=config.seed,
        topics_by_level=topics_by_level,
        scored_topics=scored,
        coherence=report,
        topic_count=len(scored),
        gold_count=gold_count,
        valid=len(scored) >= config.min_topics_valid,
        time_p_seconds=time_p,
        counts=counts,
        unmapped_topics=unmapped,
    )


def run_kmeans_baseline(config: PipelineConfig) -> RunReport:
    """The weighted K-Means baseline over the same prepared inputs."""
    config.validate()
    if config.baseline is None:
        raise ConfigError("baseline run requires a [baseline] configuration")
    train, holdout, vocab, table, counts = _prepare_inputs(config)

    t0 = _process_time(config.timing_enabled)
    with _stage("kmeans"):
        clusters = topics_mod.kmeans_weighted(vocab, table, config.baseline,
                                              min_words=config.min_topic_words)
        for i, topic in enumerate(clusters):
            topic.id = f"km-{i}"
            topic.representatives = tuple(topic.ranking[:config.top_n])
    time_p = _process_time(config.timing_enabled) - t0

    with _stage("coherence"):
        if clusters:
            report = coherence_mod.evaluate(clusters, train, holdout, time_p_seconds=time_p)
        else:
            report = coherence_mod.CoherenceReport(
                per_topic={}, mean_umass=None, mean_cv_intrinsic=None,
                mean_cv_extrinsic=None, undefined_umass=0, undefined_cv_in=0,
                undefined_cv_ex=0, time_p_seconds=time_p)

    gold_count = 0
    unmapped: list[str] = []
    if config.gold_map_path:
        with _stage("gold-mapping"):
            gold_count, unmapped = map_to_gold(clusters, config.gold_map_path)

    return RunReport(
        method="kmeans",
        config_echo=config.echo(),
        seed=config.seed,
        topics_by_level={},
        scored_topics=clusters,
        coherence=report,
        topic_count=len(clusters),
        gold_count=gold_count,
        valid=len(clusters) >= config.min_topics_valid,
        time_p_seconds=time_p,
        counts=counts,
        unmapped_topics=unmapped,
    )


def map_to_gold(topics, mapping_path: str | Path) -> tuple[int, list[str]]:
    """Attach human gold labels from a ``topic_id<TAB>gold_label`` file.

    Returns (number of distinct labels used, ids of topics left unmapped).
    Mapping rows that reference unknown topic ids are an error.
    """
    path = Path(mapping_path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read gold mapping {path}: {exc}") from exc
    by_id = {t.id: t for t in topics}
    labels_used: set[str] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise DataError(f"{path}: line {lineno}: expected topic_id<TAB>gold_label")
        topic_id, label = parts
        if topic_id not in by_id:
            raise DataError(f"{path}: line {lineno}: unknown topic id {topic_id!r}")
        by_id[topic_id].label = label
        labels_used.add(label)
    unmapped = [t.id for t in topics if t.label is None]
    return len(labels_used), unmapped


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------


def _write_atomic(path: Path, content: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(content, encoding="utf-8")
    os.replace(tmp, path)


def run_json_dict(report: RunReport) -> dict:
    return {
        "method": report.method,
        "config": report.config_echo,
        "seed": report.seed,
        "valid": report.valid,
        "topic_count": report.topic_count,
        "gold_count": report.gold_count,
        "unmapped_topics": report.unmapped_topics,
        "topics_per_level": {str(k): len(v) for k, v in sorted(report.topics_by_level.items())},
        "counts": report.counts,
        "time_p_seconds": report.time_p_seconds,
        "coherence": report.coherence.to_json_dict(),
        # Imported results of third-party baselines can be attached here by
        # downstream tooling; this pipeline never fills it.
        "external_baseline": None,
    }


def topics_json_dict(report: RunReport) -> dict:
    levels = {
        str(level): topics_mod.topics_to_json_dict(level_topics)
        for level, level_topics in sorted(report.topics_by_level.items())
    }
    return {
        "method": report.method,
        "scored": topics_mod.topics_to_json_dict(report.scored_topics),
        "levels": levels,
    }


def emit_report(report: RunReport, out_dir: str | Path) -> list[Path]:
    """Write topics.json, coherence.csv, and run.json atomically.

    Key order is stable (sorted), so identical runs produce byte-identical
    files; returns the written paths.
    """
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        paths = []
        for name, payload in (("topics.json", topics_json_dict(report)),
                              ("run.json", run_json_dict(report))):
            target = out / name
            _write_atomic(target, json.dumps(payload, indent=2, sort_keys=True) + "\n")
            paths.append(target)
        target = out / "coherence.csv"
        _write_atomic(target, report.coherence.to_csv())
        paths.append(target)
        return paths
    except OSError as exc:
        raise DataError(f"cannot write report into {out}: {exc}") from exc
