"""Word vectors: file I/O, desk-scale skip-gram training with hierarchical
softmax, and cosine similarity.

The trainer is deliberately single-threaded and free of subsampling or
window shrinking so that a fixed seed reproduces vectors bit for bit.
"""

from __future__ import annotations

import heapq
import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import Corpus, Vocabulary
from .errors import DataError

logger = logging.getLogger(__name__)

EMBEDDING_FORMATS = ("word2vec-text", "word2vec-binary")


@dataclass
class LoadStats:
    """Counts of rows a loader had to discard."""

    duplicates_dropped: int = 0
    zero_vectors_dropped: int = 0


@dataclass
class EmbeddingTable:
    """word -> dense float64 vector, all of the same dimension."""

    dim: int
    vectors: dict[str, np.ndarray]
    load_stats: LoadStats | None = None

    def __contains__(self, word: str) -> bool:
        return word in self.vectors

    def __getitem__(self, word: str) -> np.ndarray:
        return self.vectors[word]

    def __len__(self) -> int:
        return len(self.vectors)

    def words(self) -> list[str]:
        return list(self.vectors)

    def matrix(self, words: list[str] | tuple[str, ...]) -> np.ndarray:
        """Stack the vectors of ``words`` into a (len(words), dim) array."""
        return np.stack([self.vectors[w] for w in words])


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity of two non-zero vectors, clipped into [-1, 1]."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"length mismatch: {u.shape} vs {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine is undefined for zero-norm vectors")
    return float(np.clip(float(u @ v) / (nu * nv), -1.0, 1.0))


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------


def _parse_header(line: str, path: Path) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise DataError(f"{path}: expected header 'count dim', got {line!r}")
    try:
        count, dim = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise DataError(f"{path}: non-integer header {line!r}") from exc
    if count < 0 or dim < 1:
        raise DataError(f"{path}: invalid header values count={count} dim={dim}")
    return count, dim


def _finish_table(entries: dict[str, np.ndarray], stats: LoadStats, dim: int) -> EmbeddingTable:
    if stats.duplicates_dropped:
        logger.warning("dropped %d duplicate embedding rows (first occurrence wins)",
                       stats.duplicates_dropped)
    if stats.zero_vectors_dropped:
        logger.warning("dropped %d all-zero embedding vectors", stats.zero_vectors_dropped)
    return EmbeddingTable(dim=dim, vectors=entries, load_stats=stats)


def load_embeddings(path: str | Path, format: str = "word2vec-text") -> EmbeddingTable:
    """Load a pre-trained embedding table.

    Duplicate words keep their first occurrence; all-zero vectors are
    dropped.  Both cases are counted in the returned table's ``load_stats``
    and logged as warnings.  A row whose value count disagrees with the
    declared dimension is an error naming the row.
    """
    if format not in EMBEDDING_FORMATS:
        raise ValueError(f"unknown embedding format {format!r}; expected one of {EMBEDDING_FORMATS}")
    path = Path(path)
    if format == "word2vec-text":
        return _load_text(path)
    return _load_binary(path)


def _load_text(path: Path) -> EmbeddingTable:
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise DataError(f"cannot read embeddings file {path}: {exc}") from exc
    if not lines:
        raise DataError(f"{path}: empty embeddings file")
    count, dim = _parse_header(lines[0], path)
    entries: dict[str, np.ndarray] = {}
    stats = LoadStats()
    for lineno, line in enumerate(lines[1:], start=2):
        if len(entries) + stats.duplicates_dropped + stats.zero_vectors_dropped >= count:
            break
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != dim + 1:
            raise DataError(
                f"{path}: line {lineno}: expected word + {dim} values, got {len(parts) - 1}"
            )
        word = parts[0]
        try:
            vec = np.array([float(x) for x in parts[1:]], dtype=np.float64)
        except ValueError as exc:
            raise DataError(f"{path}: line {lineno}: non-numeric value") from exc
        if not np.all(np.isfinite(vec)):
            raise DataError(f"{path}: line {lineno}: NaN or Inf entry")
        if word in entries:
            stats.duplicates_dropped += 1
            continue
        if not np.any(vec):
            stats.zero_vectors_dropped += 1
            continue
        entries[word] = vec
    if not entries:
        raise DataError(f"{path}: no usable embedding rows")
    return _finish_table(entries, stats, dim)


def _load_binary(path: Path) -> EmbeddingTable:
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise DataError(f"cannot read embeddings file {path}: {exc}") from exc
    newline = raw.find(b"\n")
    if newline < 0:
        raise DataError(f"{path}: missing header line")
    count, dim = _parse_header(raw[:newline].decode("utf-8", errors="replace"), path)
    pos = newline + 1
    vec_bytes = 4 * dim
    entries: dict[str, np.ndarray] = {}
    stats = LoadStats()
    for row in range(count):
        while pos < len(raw) and raw[pos : pos + 1] in (b"\n", b" "):
            pos += 1
        if pos >= len(raw):
            break
        space = raw.find(b" ", pos)
        if space < 0:
            raise DataError(f"{path}: entry {row + 1}: missing word/vector separator")
        word = raw[pos:space].decode("utf-8", errors="replace")
        pos = space + 1
        if pos + vec_bytes > len(raw):
            raise DataError(f"{path}: entry {row + 1} ({word!r}): truncated vector")
        vec = np.frombuffer(raw, dtype="<f4", count=dim, offset=pos).astype(np.float64)
        pos += vec_bytes
        if not np.all(np.isfinite(vec)):
            raise DataError(f"{path}: entry {row + 1} ({word!r}): NaN or Inf entry")
        if word in entries:
            stats.duplicates_dropped += 1
            continue
        if not np.any(vec):
            stats.zero_vectors_dropped += 1
            continue
        entries[word] = vec
    if not entries:
        raise DataError(f"{path}: no usable embedding rows")
    return _finish_table(entries, stats, dim)


def save_embeddings(table: EmbeddingTable, path: str | Path, format: str = "word2vec-text") -> None:
    """Write ``table`` in word2vec text or binary format."""
    if format not in EMBEDDING_FORMATS:
        raise ValueError(f"unknown embedding format {format!r}; expected one of {EMBEDDING_FORMATS}")
    path = Path(path)
    words = list(table.vectors)
    if format == "word2vec-text":
        lines = [f"{len(words)} {table.dim}"]
        for w in words:
            values = " ".join(repr(float(x)) for x in table.vectors[w])
            lines.append(f"{w} {values}")
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    else:
        chunks = [f"{len(words)} {table.dim}\n".encode("utf-8")]
        for w in words:
            chunks.append(w.encode("utf-8") + b" ")
            chunks.append(table.vectors[w].astype("<f4").tobytes())
        path.write_bytes(b"".join(chunks))


# ---------------------------------------------------------------------------
# Huffman tree for hierarchical softmax
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HuffmanTree:
    """Per-word prefix-free bit codes and root-to-leaf internal-node paths.

    Internal nodes are numbered in merge order, so the root is always
    ``num_internal - 1`` and ``num_internal == vocabulary size - 1``.
    ``paths[w]`` lists the internal nodes visited from the root down to
    (but excluding) the leaf of ``w``; ``codes[w][i]`` is the branch taken
    at ``paths[w][i]`` (0 = first-merged child, 1 = second).
    """

    codes: dict[str, tuple[int, ...]]
    paths: dict[str, tuple[int, ...]]
    num_internal: int

    def code_length(self, word: str) -> int:
        return len(self.codes[word])


def build_huffman(vocab: Vocabulary) -> HuffmanTree:
    """Standard frequency-based Huffman construction over vocabulary counts.

    Ties are broken by vocabulary order (earlier word / earlier-created
    internal node wins), which pins the tree shape and the 0/1 bit
    assignment for a given vocabulary.
    """
    words = vocab.words
    if len(words) < 2:
        raise ValueError("Huffman construction needs a vocabulary of at least 2 words")

    # Heap entries: (count, creation_order, node_id).  Leaves are numbered
    # 0..V-1 in vocabulary order, internal nodes V, V+1, ... in merge order.
    n = len(words)
    heap: list[tuple[int, int, int]] = [(vocab.tf[w], i, i) for i, w in enumerate(words)]
    heapq.heapify(heap)
    children: dict[int, tuple[int, int]] = {}
    next_id = n
    while len(heap) > 1:
        c0, _, first = heapq.heappop(heap)
        c1, _, second = heapq.heappop(heap)
        children[next_id] = (first, second)
        heapq.heappush(heap, (c0 + c1, next_id, next_id))
        next_id += 1

    codes: dict[str, tuple[int, ...]] = {}
    paths: dict[str, tuple[int, ...]] = {}
    root = next_id - 1
    # Iterative DFS from the root, accumulating (internal node, bit) pairs.
    stack: list[tuple[int, tuple[int, ...], tuple[int, ...]]] = [(root, (), ())]
    while stack:
        node, code, path = stack.pop()
        if node < n:
            codes[words[node]] = code
            paths[words[node]] = path
            continue
        internal_idx = node - n
        first, second = children[node]
        stack.append((first, code + (0,), path + (internal_idx,)))
        stack.append((second, code + (1,), path + (internal_idx,)))
    return HuffmanTree(codes=codes, paths=paths, num_internal=n - 1)


# ---------------------------------------------------------------------------
# Skip-gram with hierarchical softmax
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SkipGramConfig:
    window: int = 15
    epochs: int = 400
    dim: int = 200
    initial_lr: float = 0.025
    seed: int = 0

    def __post_init__(self) -> None:
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.dim < 2:
            raise ValueError("dim must be >= 2")
        if self.initial_lr <= 0:
            raise ValueError("initial_lr must be positive")


def _sigmoid(x: np.ndarray) -> np.ndarray:
    """Numerically stable logistic function."""
    out = np.empty_like(x, dtype=np.float64)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def hs_path_log_prob(center_vec: np.ndarray, node_vecs: np.ndarray, code: np.ndarray) -> float:
    """Log probability of taking branch ``code`` at each node on a path.

    The decision at node j is sigmoid(center . node_j) for bit 0 and
    1 - sigmoid(...) for bit 1, i.e. log sigma((1 - 2*code) * (center . node)).
    """
    x = node_vecs @ center_vec
    signs = 1.0 - 2.0 * code
    # log(sigma(s*x)) computed stably as -log1p(exp(-s*x)) via logaddexp.
    return float(-np.logaddexp(0.0, -signs * x).sum())


def hs_path_gradients(
    center_vec: np.ndarray, node_vecs: np.ndarray, code: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Gradients of :func:`hs_path_log_prob` w.r.t. the center vector and
    each node vector.  Returns ``(grad_center, grad_nodes)`` where
    ``grad_nodes`` has one row per path node."""
    x = node_vecs @ center_vec
    g = (1.0 - code) - _sigmoid(x)
    grad_center = node_vecs.T @ g
    grad_nodes = np.outer(g, center_vec)
    return grad_center, grad_nodes


class SkipGramHS:
    """Plain skip-gram trainer with a hierarchical-softmax output layer.

    For every (center, context) pair inside the window the model ascends
    the gradient of log P(context | center), where the probability is the
    product of branch sigmoids along the context word's Huffman path.
    Input vectors start uniform in [-0.5/dim, 0.5/dim]; internal-node
    vectors start at zero.  The learning rate decays linearly from
    ``initial_lr`` to ``initial_lr / 10`` over all updates.
    """

    def __init__(self, vocab: Vocabulary, config: SkipGramConfig):
        if len(vocab) < 2:
            raise ValueError("skip-gram training needs at least 2 vocabulary words")
        self.vocab = vocab
        self.config = config
        self.tree = build_huffman(vocab)
        self.word_index = {w: i for i, w in enumerate(vocab.words)}
        rng = np.random.default_rng(config.seed)
        n, dim = len(vocab), config.dim
        self.input_vectors = (rng.random((n, dim)) - 0.5) / dim
        self.node_vectors = np.zeros((self.tree.num_internal, dim))
        self._codes = [np.array(self.tree.codes[w], dtype=np.float64) for w in vocab.words]
        self._paths = [np.array(self.tree.paths[w], dtype=np.intp) for w in vocab.words]

    def _pair_stream(self, corpus: Corpus) -> list[tuple[int, int]]:
        pairs: list[tuple[int, int]] = []
        window = self.config.window
        for seg in corpus:
            ids = [self.word_index[t] for t in seg.tokens if t in self.word_index]
            for t, center in enumerate(ids):
                lo = max(0, t - window)
                hi = min(len(ids), t + window + 1)
                for c in range(lo, hi):
                    if c != t:
                        pairs.append((center, ids[c]))
        return pairs

    def train(self, corpus: Corpus) -> None:
        pairs = self._pair_stream(corpus)
        if not pairs:
            raise DataError("empty training stream: no in-vocabulary token pairs")
        lr0 = self.config.initial_lr
        lr_final = lr0 / 10.0
        total = len(pairs) * self.config.epochs
        step = 0
        for _ in range(self.config.epochs):
            for center, context in pairs:
                if total > 1:
                    lr = lr0 + (lr_final - lr0) * (step / (total - 1))
                else:
                    lr = lr0
                step += 1
                path = self._paths[context]
                code = self._codes[context]
                u = self.input_vectors[center]
                nodes = self.node_vectors[path]
                x = nodes @ u
                g = ((1.0 - code) - _sigmoid(x)) * lr
                # Both updates use the pre-update values of the other side.
                grad_u = nodes.T @ g
                self.node_vectors[path] += np.outer(g, u)
                u += grad_u

    def log_probability(self, center: str, word: str) -> float:
        """log P(word | center) under the current model."""
        u = self.input_vectors[self.word_index[center]]
        path = self._paths[self.word_index[word]]
        code = self._codes[self.word_index[word]]
        return hs_path_log_prob(u, self.node_vectors[path], code)

    def probability(self, center: str, word: str) -> float:
        return math.exp(self.log_probability(center, word))

    def to_table(self) -> EmbeddingTable:
        vectors = {w: self.input_vectors[i].copy() for i, w in enumerate(self.vocab.words)}
        return EmbeddingTable(dim=self.config.dim, vectors=vectors)


def train_skipgram_hs(corpus: Corpus, vocab: Vocabulary, config: SkipGramConfig) -> EmbeddingTable:
    """Train skip-gram embeddings and return the input-vector table."""
    model = SkipGramHS(vocab, config)
    model.train(corpus)
    return model.to_table()
