"""Command-line interface.

Subcommands: ``train-embeddings``, ``extract`` (k-component pipeline),
``baseline-kmeans``, ``evaluate`` (re-score a topics.json), and ``report``
(apply a gold mapping to an emitted run).  Exit codes: 0 success (even for
runs flagged invalid), 1 usage error, 2 data error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from pathlib import Path

from . import coherence as coherence_mod
from . import corpus as corpus_mod
from . import embeddings as embeddings_mod
from . import pipeline as pipeline_mod
from . import topics as topics_mod
from .errors import ConfigError, DataError, PipelineStageError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; route through our own codes.
    def error(self, message: str):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="graphtopics", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", required=True, help="TOML configuration file")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument("--out", default="out", help="output directory")

    common(sub.add_parser("train-embeddings",
                          help="train skip-gram embeddings and write embeddings.txt"))
    common(sub.add_parser("extract", help="run the k-component extraction pipeline"))
    common(sub.add_parser("baseline-kmeans", help="run the weighted K-Means baseline"))

    evaluate = sub.add_parser("evaluate", help="re-score coherence for an existing topics.json")
    common(evaluate)
    evaluate.add_argument("--topics", default=None,
                          help="topics.json to score (default: <out>/topics.json)")

    report = sub.add_parser("report", help="apply a gold mapping to an emitted run")
    report.add_argument("--out", default="out", help="directory holding run.json/topics.json")
    report.add_argument("--gold-map", required=True, help="topic_id<TAB>gold_label file")
    return parser


def _cmd_train_embeddings(args) -> int:
    config = pipeline_mod.load_config(args.config, seed_override=args.seed)
    corp = corpus_mod.load_corpus(config.corpus_path, config.corpus_format,
                                  name=config.name or None)
    if config.pos_mode == "nouns":
        pos_map = corpus_mod.load_pos_map(config.pos_map_path)
        corp = corpus_mod.filter_pos(corp, pos_map, "nouns")
    train, _ = corpus_mod.split_holdout(corp, config.holdout_fraction, config.seed)
    vocab = corpus_mod.build_vocabulary(train, config.min_count)
    table = embeddings_mod.train_skipgram_hs(train, vocab, config.skipgram)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    target = out / "embeddings.txt"
    embeddings_mod.save_embeddings(table, target, "word2vec-text")
    print(f"trained {len(table)} vectors (dim={table.dim}) -> {target}")
    return EXIT_OK


def _print_summary(report: pipeline_mod.RunReport) -> None:
    coh = report.coherence

    def fmt(x):
        return "n/a" if x is None else f"{x:.4f}"

    print(f"method={report.method} topics={report.topic_count} gold={report.gold_count} "
          f"valid={report.valid}")
    print(f"umass={fmt(coh.mean_umass)} cv_in={fmt(coh.mean_cv_intrinsic)} "
          f"cv_ex={fmt(coh.mean_cv_extrinsic)} time_p={report.time_p_seconds:.4f}s")


def _cmd_extract(args) -> int:
    config = pipeline_mod.load_config(args.config, seed_override=args.seed)
    report = pipeline_mod.run_pipeline(config)
    paths = pipeline_mod.emit_report(report, args.out)
    _print_summary(report)
    print("wrote " + ", ".join(str(p) for p in paths))
    return EXIT_OK


def _cmd_baseline(args) -> int:
    config = pipeline_mod.load_config(args.config, seed_override=args.seed)
    report = pipeline_mod.run_kmeans_baseline(config)
    paths = pipeline_mod.emit_report(report, args.out)
    _print_summary(report)
    print("wrote " + ", ".join(str(p) for p in paths))
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    config = pipeline_mod.load_config(args.config, seed_override=args.seed)
    topics_path = Path(args.topics) if args.topics else Path(args.out) / "topics.json"
    try:
        payload = json.loads(topics_path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise DataError(f"cannot read topics file {topics_path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"{topics_path}: invalid JSON: {exc}") from exc
    topics = topics_mod.topics_from_json_dict(payload.get("scored", payload))
    if not topics:
        raise DataError(f"{topics_path}: no scored topics to evaluate")

    corp = corpus_mod.load_corpus(config.corpus_path, config.corpus_format,
                                  name=config.name or None)
    if config.pos_mode == "nouns":
        pos_map = corpus_mod.load_pos_map(config.pos_map_path)
        corp = corpus_mod.filter_pos(corp, pos_map, "nouns")
    train, holdout = corpus_mod.split_holdout(corp, config.holdout_fraction, config.seed)
    coh = coherence_mod.evaluate(topics, train, holdout)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    target = out / "coherence.csv"
    target.write_text(coh.to_csv(), encoding="utf-8")

    def fmt(x):
        return "n/a" if x is None else f"{x:.4f}"

    print(f"umass={fmt(coh.mean_umass)} cv_in={fmt(coh.mean_cv_intrinsic)} "
          f"cv_ex={fmt(coh.mean_cv_extrinsic)} -> {target}")
    return EXIT_OK


def _cmd_report(args) -> int:
    out = Path(args.out)
    topics_path = out / "topics.json"
    run_path = out / "run.json"
    try:
        topics_payload = json.loads(topics_path.read_text(encoding="utf-8"))
        run_payload = json.loads(run_path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise DataError(f"cannot read emitted run under {out}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"invalid JSON under {out}: {exc}") from exc
    topics = topics_mod.topics_from_json_dict(topics_payload.get("scored", []))
    gold_count, unmapped = pipeline_mod.map_to_gold(topics, args.gold_map)
    topics_payload["scored"] = topics_mod.topics_to_json_dict(topics)
    run_payload["gold_count"] = gold_count
    run_payload["unmapped_topics"] = unmapped
    pipeline_mod._write_atomic(topics_path, json.dumps(topics_payload, indent=2, sort_keys=True) + "\n")
    pipeline_mod._write_atomic(run_path, json.dumps(run_payload, indent=2, sort_keys=True) + "\n")
    print(f"topics={len(topics)} gold={gold_count} unmapped={len(unmapped)}")
    return EXIT_OK


_COMMANDS = {
    "train-embeddings": _cmd_train_embeddings,
    "extract": _cmd_extract,
    "baseline-kmeans": _cmd_baseline,
    "evaluate": _cmd_evaluate,
    "report": _cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, _UsageError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PipelineStageError as exc:
        cause = exc.__cause__
        if isinstance(cause, (DataError, OSError)):
            print(f"data error: {exc}", file=sys.stderr)
            return EXIT_DATA
        print(f"internal error: {exc}", file=sys.stderr)
        traceback.print_exc()
        return EXIT_INTERNAL
    except (DataError, OSError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SystemExit:
        raise
    except Exception as exc:  # noqa: BLE001 - last-resort mapping to exit code 3
        print(f"internal error: {exc}", file=sys.stderr)
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
