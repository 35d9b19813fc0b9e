"""Topics from graph components or embedding clusters.

A topic is a set of member words plus an ordered representative list.  Two
rankings are available: node degree inside the topic's subgraph, and cosine
similarity to the mean-pooled topic vector (TVS).  The module also provides
the sample-weighted K-Means baseline used for comparison runs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .corpus import Vocabulary
from .embeddings import EmbeddingTable, cosine
from .errors import DataError
from .simgraph import WordGraph

logger = logging.getLogger(__name__)

DEFAULT_MIN_WORDS = 6
DEFAULT_TOP_N = 5
WEIGHTINGS = ("TF", "TF-IDF")


@dataclass
class Topic:
    """A set of member words with ranked representatives and provenance."""

    members: frozenset[str]
    source: str  # "kcomponent" or "kmeans"
    level: int | None = None
    cluster_id: int | None = None
    representatives: tuple[str, ...] = ()
    ranking: tuple[str, ...] = ()  # every member, best first
    label: str | None = None
    id: str = ""

    def scoring_words(self, n: int) -> list[str]:
        """The top-n ranked members, used when scoring coherence."""
        if self.ranking:
            return list(self.ranking[:n])
        if self.representatives:
            return list(self.representatives[:n])
        return sorted(self.members)[:n]


def topic_vector(members, emb: EmbeddingTable) -> np.ndarray:
    """Arithmetic mean of the member embeddings."""
    return emb.matrix(sorted(members)).mean(axis=0)


def components_to_topics(components, min_words: int = DEFAULT_MIN_WORDS,
                         level: int | None = None, source: str = "kcomponent") -> list[Topic]:
    """One topic per component of at least ``min_words`` members."""
    topics = []
    dropped = 0
    for comp in components:
        if len(comp) >= min_words:
            topics.append(Topic(members=frozenset(comp), source=source, level=level))
        else:
            dropped += 1
    if dropped:
        logger.info("dropped %d component(s) below the %d-word minimum", dropped, min_words)
    return topics


def representatives_by_degree(topic: Topic, g: WordGraph, top_n: int = DEFAULT_TOP_N) -> list[str]:
    """Members ranked by degree inside the induced subgraph.

    Ties break by weighted degree (summed incident cosine weights), then
    lexicographically.
    """
    if top_n < 1:
        raise ValueError("top_n must be >= 1")
    for w in topic.members:
        if not g.has_node(w):
            raise KeyError(f"topic member {w!r} is not a node of the graph")
    sub = g.subgraph(topic.members)
    weighted = {w: sum(sub.neighbors(w).values()) for w in sub.nodes}
    ranked = sorted(sub.nodes, key=lambda w: (-sub.degree(w), -weighted[w], w))
    return ranked[:top_n]


def representatives_by_tvs(topic: Topic, emb: EmbeddingTable, top_n: int = DEFAULT_TOP_N) -> list[str]:
    """Members ranked by cosine similarity to the mean-pooled topic vector."""
    if top_n < 1:
        raise ValueError("top_n must be >= 1")
    for w in topic.members:
        if w not in emb:
            raise KeyError(f"topic member {w!r} has no embedding")
    tv = topic_vector(topic.members, emb)
    if not np.any(tv):
        raise ValueError("topic vector has zero norm; TVS ranking is undefined")
    sims = {w: cosine(emb[w], tv) for w in topic.members}
    ranked = sorted(topic.members, key=lambda w: (-sims[w], w))
    return ranked[:top_n]


# ---------------------------------------------------------------------------
# Weighted K-Means baseline
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KMeansConfig:
    k: int
    weighting: str = "TF"
    seed: int = 0
    max_iter: int = 300
    restarts: int = 10

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError("k must be >= 2")
        if self.weighting not in WEIGHTINGS:
            raise ValueError(f"weighting must be one of {WEIGHTINGS}")
        if self.max_iter < 1 or self.restarts < 1:
            raise ValueError("max_iter and restarts must be >= 1")


@dataclass
class KMeansResult:
    labels: np.ndarray
    centers: np.ndarray
    wcss: float
    wcss_trace: list[float]
    restart: int


def _pairwise_sq(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - centers[None, :, :]
    return np.einsum("nkd,nkd->nk", diff, diff)


def _objective(points, weights, centers, labels) -> float:
    diff = points - centers[labels]
    return float(np.sum(weights * np.einsum("nd,nd->n", diff, diff)))


def _kmeanspp(points: np.ndarray, weights: np.ndarray, k: int,
              rng: np.random.Generator) -> np.ndarray:
    """Weighted k-means++ seeding: the first center is drawn proportionally
    to weight, later ones proportionally to weight times squared distance to
    the nearest chosen center."""
    n = points.shape[0]
    total = float(weights.sum())
    chosen = [int(rng.choice(n, p=weights / total))]
    d2 = ((points - points[chosen[0]]) ** 2).sum(axis=1)
    while len(chosen) < k:
        potential = weights * d2
        mass = float(potential.sum())
        if mass > 0.0:
            nxt = int(rng.choice(n, p=potential / mass))
        else:
            # Everything sits on a chosen center already; take the lowest
            # unchosen index so seeding stays total and deterministic.
            taken = set(chosen)
            nxt = next(i for i in range(n) if i not in taken)
        chosen.append(nxt)
        d2 = np.minimum(d2, ((points - points[nxt]) ** 2).sum(axis=1))
    return points[chosen].copy()


def _repair_empty(points, weights, d2, labels, counts, centers) -> None:
    """Give each empty cluster the point contributing most weighted cost.

    Mutates labels/counts/centers/d2 in place.  Points that are alone in
    their cluster stay put so the repair cannot create a new empty cluster.
    """
    n = points.shape[0]
    for cid in np.flatnonzero(counts == 0):
        contrib = weights * d2[np.arange(n), labels]
        movable = counts[labels] > 1
        if not movable.any():
            return
        contrib = np.where(movable, contrib, -np.inf)
        j = int(np.argmax(contrib))
        counts[labels[j]] -= 1
        labels[j] = cid
        counts[cid] = 1
        centers[cid] = points[j]
        d2[:, cid] = ((points - points[j]) ** 2).sum(axis=1)


def _lloyd(points, weights, centers, max_iter):
    n, k = points.shape[0], centers.shape[0]
    labels = None
    trace: list[float] = []
    prev_obj = np.inf
    for _ in range(max_iter):
        d2 = _pairwise_sq(points, centers)
        new_labels = d2.argmin(axis=1)
        counts = np.bincount(new_labels, minlength=k)
        if (counts == 0).any():
            _repair_empty(points, weights, d2, new_labels, counts, centers)
        obj = _objective(points, weights, centers, new_labels)
        assert obj <= prev_obj + 1e-9 * max(1.0, abs(prev_obj)), \
            "weighted WCSS increased during assignment"
        trace.append(obj)
        if labels is not None and np.array_equal(new_labels, labels):
            labels = new_labels
            break
        labels = new_labels
        for c in range(k):
            mask = labels == c
            wsum = float(weights[mask].sum())
            if wsum > 0.0:
                centers[c] = (weights[mask, None] * points[mask]).sum(axis=0) / wsum
            elif mask.any():
                centers[c] = points[mask].mean(axis=0)
        obj = _objective(points, weights, centers, labels)
        assert obj <= trace[-1] + 1e-9 * max(1.0, abs(trace[-1])), \
            "weighted WCSS increased during the centroid update"
        prev_obj = obj
    final = _objective(points, weights, centers, labels)
    return labels, centers, final, trace


def kmeans_fit(points: np.ndarray, weights: np.ndarray, k: int, seed: int,
               max_iter: int = 300, restarts: int = 10) -> KMeansResult:
    """Best of ``restarts`` weighted Lloyd runs, selected by (WCSS, restart).

    Restart streams are spawned from one seed sequence, so the outcome does
    not depend on execution order.
    """
    points = np.asarray(points, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    n = points.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    if np.any(weights < 0):
        raise ValueError("weights must be non-negative")
    if float(weights.sum()) <= 0.0:
        raise DataError("all clustering weights are zero")
    best: KMeansResult | None = None
    for restart, seq in enumerate(np.random.SeedSequence(seed).spawn(restarts)):
        rng = np.random.default_rng(seq)
        centers0 = _kmeanspp(points, weights, k, rng)
        labels, centers, wcss, trace = _lloyd(points, weights, centers0, max_iter)
        if best is None or wcss < best.wcss:
            best = KMeansResult(labels, centers, wcss, trace, restart)
    assert best is not None
    return best


def kmeans_weighted(vocab: Vocabulary, emb: EmbeddingTable, config: KMeansConfig,
                    min_words: int = DEFAULT_MIN_WORDS) -> list[Topic]:
    """Cluster embedded vocabulary words with TF or TF-IDF sample weights.

    Clusters below ``min_words`` members are dropped; each surviving topic
    gets a TVS ranking and top-5 representatives.
    """
    words = [w for w in vocab.words if w in emb]
    if config.k > len(words):
        raise DataError(f"k={config.k} exceeds the embedded vocabulary size {len(words)}")
    stats = vocab.tf if config.weighting == "TF" else vocab.tfidf
    weights = np.array([stats[w] for w in words], dtype=np.float64)
    points = emb.matrix(words)
    result = kmeans_fit(points, weights, config.k, config.seed,
                        config.max_iter, config.restarts)
    topics: list[Topic] = []
    for cid in range(config.k):
        members = frozenset(w for w, lab in zip(words, result.labels) if lab == cid)
        if len(members) < min_words:
            if members:
                logger.info("dropped cluster %d with %d member(s)", cid, len(members))
            continue
        topic = Topic(members=members, source="kmeans", cluster_id=cid)
        ranking = representatives_by_tvs(topic, emb, top_n=len(members))
        topic.ranking = tuple(ranking)
        topic.representatives = tuple(ranking[:DEFAULT_TOP_N])
        topics.append(topic)
    return topics


# ---------------------------------------------------------------------------
# Serialisation
# ---------------------------------------------------------------------------


def topics_to_json_dict(topics) -> list[dict]:
    """JSON-ready topic dump with sorted member lists and stable key order."""
    out = []
    for t in topics:
        entry = {
            "id": t.id,
            "source": t.source,
            "level": t.level,
            "cluster_id": t.cluster_id,
            "label": t.label,
            "representatives": list(t.representatives),
            "ranking": list(t.ranking),
            "members": sorted(t.members),
        }
        out.append(entry)
    return out


def topics_from_json_dict(entries) -> list[Topic]:
    topics = []
    for entry in entries:
        topics.append(Topic(
            members=frozenset(entry["members"]),
            source=entry.get("source", "kcomponent"),
            level=entry.get("level"),
            cluster_id=entry.get("cluster_id"),
            representatives=tuple(entry.get("representatives", ())),
            ranking=tuple(entry.get("ranking", ())),
            label=entry.get("label"),
            id=entry.get("id", ""),
        ))
    return topics
