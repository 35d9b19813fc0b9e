"""Topic coherence: u_mass over document co-occurrence and c_v over a
boolean sliding window.

c_v uses one-set segmentation: each topic word's NPMI context vector (one
entry per topic word, self-association 1) is compared by cosine against the
summed context vector of the whole word set, and the confirmations are
averaged.  Topics whose words are absent from the reference corpus score
``None`` and are excluded from report means.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .corpus import Corpus

logger = logging.getLogger(__name__)

NPMI_EPSILON = 1e-12
DEFAULT_WINDOW_SIZE = 110
DEFAULT_SCORING_WORDS = 10

STAT_UNITS = ("document", "window")


@dataclass
class CooccurrenceStats:
    """Boolean per-unit word and word-pair counts.

    Each unit (a segment, or one sliding window) counts a word at most
    once, so ``joint(w1, w2) <= min(count(w1), count(w2))`` and every count
    is bounded by ``total_units``.
    """

    unit: str
    window_size: int | None
    counts: dict[str, int]
    joints: dict[tuple[str, str], int]
    total_units: int

    def count(self, word: str) -> int:
        return self.counts.get(word, 0)

    def joint(self, w1: str, w2: str) -> int:
        if w1 == w2:
            return self.count(w1)
        key = (w1, w2) if w1 < w2 else (w2, w1)
        return self.joints.get(key, 0)


def _window_sets(tokens: tuple[str, ...], size: int):
    if len(tokens) <= size:
        yield set(tokens)
        return
    for start in range(len(tokens) - size + 1):
        yield set(tokens[start : start + size])


def collect_stats(corpus: Corpus, unit: str = "document",
                  window_size: int = DEFAULT_WINDOW_SIZE,
                  vocabulary: set[str] | None = None) -> CooccurrenceStats:
    """Count word and pair occurrences per document or per sliding window.

    Windows of ``window_size`` tokens step by one token inside each
    segment; a segment shorter than the window contributes one window.
    ``vocabulary`` restricts counting to the given words, which keeps the
    pair table small when only topic words need scoring.
    """
    if unit not in STAT_UNITS:
        raise ValueError(f"unknown co-occurrence unit {unit!r}; expected one of {STAT_UNITS}")
    if unit == "window" and window_size < 1:
        raise ValueError("window_size must be >= 1")
    if len(corpus) == 0:
        raise ValueError("cannot collect statistics from an empty corpus")
    counts: dict[str, int] = {}
    joints: dict[tuple[str, str], int] = {}
    total = 0
    for seg in corpus:
        if unit == "document":
            units = [set(seg.tokens)]
        else:
            units = _window_sets(seg.tokens, window_size)
        for present in units:
            total += 1
            if vocabulary is not None:
                present = present & vocabulary
            words = sorted(present)
            for i, w in enumerate(words):
                counts[w] = counts.get(w, 0) + 1
                for w2 in words[i + 1 :]:
                    key = (w, w2)
                    joints[key] = joints.get(key, 0) + 1
    return CooccurrenceStats(unit=unit,
                             window_size=window_size if unit == "window" else None,
                             counts=counts, joints=joints, total_units=total)


def umass(topic_words, stats: CooccurrenceStats) -> float:
    """Smoothed conditional log-probability coherence over document counts.

    mean over ordered pairs (i > j) of log((joint(w_i, w_j) + 1) /
    count(w_j)); pairs whose conditioning word never occurs are skipped and
    the divisor shrinks accordingly.
    """
    if stats.unit != "document":
        raise ValueError("u_mass requires document-unit statistics")
    words = list(dict.fromkeys(topic_words))
    scorable = sum(1 for w in words if stats.count(w) > 0)
    if scorable < 2:
        raise ValueError(f"u_mass needs at least 2 scorable words, have {scorable}")
    acc = 0.0
    pairs = 0
    for i in range(1, len(words)):
        for j in range(i):
            conditioning = stats.count(words[j])
            if conditioning <= 0:
                continue
            acc += math.log((stats.joint(words[i], words[j]) + 1) / conditioning)
            pairs += 1
    return acc / pairs


def npmi(w1: str, w2: str, stats: CooccurrenceStats) -> float:
    """Normalized pointwise mutual information in [-1, 1].

    Never-co-occurring pairs floor at -1; a word with itself ceilings at 1.
    """
    c1, c2 = stats.count(w1), stats.count(w2)
    if c1 <= 0 or c2 <= 0:
        raise ValueError(f"npmi needs positive marginal counts for {w1!r} and {w2!r}")
    if w1 == w2:
        return 1.0
    joint = stats.joint(w1, w2)
    if joint == 0:
        return -1.0
    total = stats.total_units
    if joint == total:
        # Co-occurring in every unit is maximal association.  The 0/0 limit
        # of the epsilon-regularised ratio would otherwise degenerate here.
        return 1.0
    p1, p2, p12 = c1 / total, c2 / total, joint / total
    denom = -math.log(p12 + NPMI_EPSILON)
    if denom == 0.0:
        return 1.0
    value = math.log((p12 + NPMI_EPSILON) / (p1 * p2)) / denom
    return min(1.0, max(-1.0, value))


def cv(topic_words, stats: CooccurrenceStats) -> float | None:
    """One-set-segmentation c_v score in [0, 1], or None when undefined.

    Words absent from the statistics are ignored; with fewer than two
    scorable words the topic cannot be scored and the undefined sentinel
    (None) is returned.
    """
    if stats.unit != "window":
        raise ValueError("c_v requires sliding-window statistics")
    words = [w for w in dict.fromkeys(topic_words) if stats.count(w) > 0]
    if len(words) < 2:
        return None
    vectors = np.array([[npmi(x, w, stats) for w in words] for x in words])
    aggregate = vectors.sum(axis=0)
    agg_norm = float(np.linalg.norm(aggregate))
    confirmations = []
    for row in vectors:
        row_norm = float(np.linalg.norm(row))
        if row_norm == 0.0 or agg_norm == 0.0:
            logger.warning("zero-norm NPMI context vector; confirmation set to 0")
            confirmations.append(0.0)
        else:
            confirmations.append(float(row @ aggregate) / (row_norm * agg_norm))
    score = float(np.mean(confirmations))
    if score < -1e-9 or score > 1.0 + 1e-9:
        logger.warning("c_v value %.12f outside [0, 1]; clamping", score)
    return min(1.0, max(0.0, score))


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclass
class TopicScores:
    topic_id: str
    source: str
    umass: float | None
    cv_in: float | None
    cv_ex: float | None


@dataclass
class CoherenceReport:
    """Per-topic scores plus arithmetic means over the scored topics."""

    per_topic: dict[str, TopicScores]
    mean_umass: float | None
    mean_cv_intrinsic: float | None
    mean_cv_extrinsic: float | None
    undefined_umass: int
    undefined_cv_in: int
    undefined_cv_ex: int
    time_p_seconds: float

    def to_csv(self) -> str:
        def fmt(x: float | None) -> str:
            return "" if x is None else f"{x:.9f}"

        lines = ["topic_id,source,umass,cv_in,cv_ex"]
        for tid in sorted(self.per_topic):
            s = self.per_topic[tid]
            lines.append(f"{tid},{s.source},{fmt(s.umass)},{fmt(s.cv_in)},{fmt(s.cv_ex)}")
        lines.append(
            f"means,time_p={self.time_p_seconds:.6f},"
            f"{fmt(self.mean_umass)},{fmt(self.mean_cv_intrinsic)},{fmt(self.mean_cv_extrinsic)}"
        )
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "per_topic": {
                tid: {
                    "source": s.source,
                    "umass": s.umass,
                    "cv_in": s.cv_in,
                    "cv_ex": s.cv_ex,
                }
                for tid, s in sorted(self.per_topic.items())
            },
            "mean_umass": self.mean_umass,
            "mean_cv_intrinsic": self.mean_cv_intrinsic,
            "mean_cv_extrinsic": self.mean_cv_extrinsic,
            "undefined": {
                "umass": self.undefined_umass,
                "cv_in": self.undefined_cv_in,
                "cv_ex": self.undefined_cv_ex,
            },
            "time_p_seconds": self.time_p_seconds,
        }


def _mean_defined(values: list[float | None]) -> tuple[float | None, int]:
    defined = [v for v in values if v is not None]
    undefined = len(values) - len(defined)
    if not defined:
        return None, undefined
    return sum(defined) / len(defined), undefined


def evaluate(topics, train: Corpus, holdout: Corpus, time_p_seconds: float = 0.0,
             scoring_top_n: int = DEFAULT_SCORING_WORDS,
             window_size: int = DEFAULT_WINDOW_SIZE) -> CoherenceReport:
    """Score every topic: u_mass and intrinsic c_v on the training corpus,
    extrinsic c_v on the holdout partition.

    Topic words are the top ``scoring_top_n`` ranked members.  Means are
    arithmetic averages over the topics with a defined score, accumulated
    in sorted topic-id order so they do not depend on scoring order.
    """
    topic_list = list(topics)
    if not topic_list:
        raise ValueError("evaluate needs at least one topic")
    ids = [t.id if t.id else f"t{i}" for i, t in enumerate(topic_list)]
    words_by_id = {tid: t.scoring_words(scoring_top_n) for tid, t in zip(ids, topic_list)}
    all_words = set().union(*words_by_id.values())
    doc_train = collect_stats(train, "document", vocabulary=all_words)
    win_train = collect_stats(train, "window", window_size, vocabulary=all_words)
    win_hold = collect_stats(holdout, "window", window_size, vocabulary=all_words)

    per_topic: dict[str, TopicScores] = {}
    for tid, topic in zip(ids, topic_list):
        words = words_by_id[tid]
        try:
            um: float | None = umass(words, doc_train)
        except ValueError:
            um = None
        source = topic.source
        if topic.level is not None:
            source = f"{topic.source}:{topic.level}"
        elif topic.cluster_id is not None:
            source = f"{topic.source}:{topic.cluster_id}"
        per_topic[tid] = TopicScores(
            topic_id=tid,
            source=source,
            umass=um,
            cv_in=cv(words, win_train),
            cv_ex=cv(words, win_hold),
        )

    ordered = [per_topic[tid] for tid in sorted(per_topic)]
    mean_umass, und_umass = _mean_defined([s.umass for s in ordered])
    mean_cv_in, und_cv_in = _mean_defined([s.cv_in for s in ordered])
    mean_cv_ex, und_cv_ex = _mean_defined([s.cv_ex for s in ordered])
    return CoherenceReport(
        per_topic=per_topic,
        mean_umass=mean_umass,
        mean_cv_intrinsic=mean_cv_in,
        mean_cv_extrinsic=mean_cv_ex,
        undefined_umass=und_umass,
        undefined_cv_in=und_cv_in,
        undefined_cv_ex=und_cv_ex,
        time_p_seconds=time_p_seconds,
    )
