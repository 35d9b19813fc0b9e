"""Corpus loading, tokenisation, POS filtering, and vocabulary statistics.

A corpus is an ordered collection of token segments.  The segment is the
document unit everywhere downstream: document frequency, u_mass
co-occurrence counts, and the train/holdout split all operate on segments.
"""

from __future__ import annotations

import math
import random
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .errors import DataError

# Alphabetic runs only: digits, punctuation and underscores separate tokens,
# so pure-number tokens can never survive tokenisation.
_WORD_RE = re.compile(r"[^\W\d_]+")

CORPUS_FORMATS = ("plain-lines", "labeled-tsv")
POS_MODES = ("nouns", "all")


def tokenize(text: str) -> list[str]:
    """Lowercase ``text`` and split it into alphabetic runs."""
    return _WORD_RE.findall(text.lower())


@dataclass(frozen=True)
class Segment:
    """One document unit: an id, its tokens, and an optional gold label."""

    id: str
    tokens: tuple[str, ...]
    gold_label: str | None = None


@dataclass(frozen=True)
class Corpus:
    """Ordered segments with unique ids; order is stable for a given input."""

    segments: tuple[Segment, ...]
    name: str = ""

    def __post_init__(self) -> None:
        ids = [seg.id for seg in self.segments]
        if len(set(ids)) != len(ids):
            raise DataError(f"corpus {self.name!r} has duplicate segment ids")

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    def segment_ids(self) -> list[str]:
        return [seg.id for seg in self.segments]


@dataclass(frozen=True)
class PosMap:
    """Externally produced word -> POS tag table.

    Words missing from the table are reported as ``None`` (untagged).
    """

    tags: dict[str, str]

    def tag(self, word: str) -> str | None:
        return self.tags.get(word)

    def __len__(self) -> int:
        return len(self.tags)


@dataclass(frozen=True)
class Vocabulary:
    """Corpus vocabulary with term statistics.

    ``words`` is sorted by descending corpus frequency, ties broken
    lexicographically, which makes the ordering reproducible across runs.
    """

    words: tuple[str, ...]
    tf: dict[str, int]
    df: dict[str, int]
    tfidf: dict[str, float]
    num_segments: int

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self.tf


def load_corpus(path: str | Path, format: str = "plain-lines", name: str | None = None) -> Corpus:
    """Read a corpus file and tokenize it.

    ``plain-lines``: one segment per line.  ``labeled-tsv``: one
    ``id<TAB>gold_label<TAB>text`` row per line.  Segments that end up with
    no tokens are dropped.
    """
    if format not in CORPUS_FORMATS:
        raise ValueError(f"unknown corpus format {format!r}; expected one of {CORPUS_FORMATS}")
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read corpus file {path}: {exc}") from exc

    segments: list[Segment] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if format == "plain-lines":
            seg_id, label, body = f"s{lineno}", None, line
        else:
            if not line.strip():
                continue
            parts = line.split("\t", 2)
            if len(parts) != 3:
                raise DataError(
                    f"{path}: line {lineno}: expected id<TAB>gold_label<TAB>text, "
                    f"got {len(parts)} field(s)"
                )
            seg_id, label, body = parts
            label = label or None
        tokens = tokenize(body)
        if tokens:
            segments.append(Segment(seg_id, tuple(tokens), label))
    return Corpus(tuple(segments), name if name is not None else path.stem)


def load_pos_map(path: str | Path) -> PosMap:
    """Read a ``word<TAB>TAG`` table; later rows win on duplicate words."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read POS map {path}: {exc}") from exc
    tags: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise DataError(f"{path}: line {lineno}: expected word<TAB>TAG")
        tags[parts[0]] = parts[1]
    return PosMap(tags)


def filter_pos(corpus: Corpus, pos_map: PosMap | None, mode: str = "nouns") -> Corpus:
    """Restrict segments to nouns, or return the corpus unchanged.

    In ``nouns`` mode a token survives only if its tag starts with ``NN``;
    untagged words are dropped, and segments emptied by the filter are
    removed.
    """
    if mode == "all":
        return corpus
    if mode != "nouns":
        raise ValueError(f"unknown POS mode {mode!r}; expected one of {POS_MODES}")
    if pos_map is None:
        raise ValueError("POS mode 'nouns' requires a pos_map")
    kept_segments = []
    for seg in corpus:
        kept = tuple(t for t in seg.tokens if (pos_map.tag(t) or "").startswith("NN"))
        if kept:
            kept_segments.append(Segment(seg.id, kept, seg.gold_label))
    return Corpus(tuple(kept_segments), corpus.name)


def build_vocabulary(corpus: Corpus, min_count: int = 5) -> Vocabulary:
    """Count term statistics and drop words with corpus frequency < min_count.

    tfidf(w) = tf(w) * ln(num_segments / df(w)), natural log, segment as
    document.
    """
    if min_count < 1:
        raise ValueError("min_count must be >= 1")
    if len(corpus) == 0:
        raise DataError("cannot build a vocabulary from an empty corpus")
    tf: Counter[str] = Counter()
    df: Counter[str] = Counter()
    for seg in corpus:
        tf.update(seg.tokens)
        df.update(set(seg.tokens))
    kept = {w: c for w, c in tf.items() if c >= min_count}
    if not kept:
        raise DataError(f"no word reaches min_count={min_count}")
    words = tuple(sorted(kept, key=lambda w: (-kept[w], w)))
    num_segments = len(corpus)
    tfidf = {w: kept[w] * math.log(num_segments / df[w]) for w in words}
    return Vocabulary(
        words=words,
        tf={w: kept[w] for w in words},
        df={w: df[w] for w in words},
        tfidf=tfidf,
        num_segments=num_segments,
    )


def split_holdout(corpus: Corpus, holdout_fraction: float, seed: int) -> tuple[Corpus, Corpus]:
    """Split segments into train and holdout parts.

    The holdout takes round(fraction * n) segments, clamped to [1, n-1] so
    both sides stay non-empty.  The split is a seeded shuffle, so it is
    deterministic for a fixed seed, and each side keeps the original
    segment order.
    """
    if not 0.0 < holdout_fraction < 1.0:
        raise ValueError(f"holdout_fraction must be in (0, 1), got {holdout_fraction}")
    n = len(corpus)
    if n < 2:
        raise DataError("need at least 2 segments to split off a holdout")
    n_holdout = int(math.floor(holdout_fraction * n + 0.5))
    n_holdout = max(1, min(n - 1, n_holdout))
    order = list(range(n))
    random.Random(seed).shuffle(order)
    holdout_idx = set(order[:n_holdout])
    train = tuple(seg for i, seg in enumerate(corpus.segments) if i not in holdout_idx)
    holdout = tuple(seg for i, seg in enumerate(corpus.segments) if i in holdout_idx)
    prefix = f"{corpus.name}/" if corpus.name else ""
    return (
        Corpus(train, f"{prefix}train"),
        Corpus(holdout, f"{prefix}holdout"),
    )
