"""Cosine-similarity word graphs and edge pruning.

``WordGraph`` stores nodes sorted lexicographically and edges as parallel
numpy arrays of canonical (u < v) index pairs, which keeps the complete
graph affordable (O(E) memory at ~16 bytes per edge) and makes every
operation reproducible: there is a single stored edge per unordered pair
and all listings are sorted.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from .corpus import Vocabulary
from .embeddings import EmbeddingTable
from .errors import DataError

logger = logging.getLogger(__name__)

DEFAULT_NODE_CAP = 20_000


class WordGraph:
    """Undirected weighted graph over words; no self-loops, one edge per pair."""

    __slots__ = ("nodes", "_index", "edge_u", "edge_v", "edge_w", "_adj")

    def __init__(self, nodes: tuple[str, ...], edge_u: np.ndarray, edge_v: np.ndarray,
                 edge_w: np.ndarray):
        # Internal constructor: callers guarantee nodes sorted, u < v, and
        # (u, v) pairs strictly increasing.  Use the classmethods instead.
        self.nodes = nodes
        self._index = {w: i for i, w in enumerate(nodes)}
        self.edge_u = edge_u
        self.edge_v = edge_v
        self.edge_w = edge_w
        self._adj: dict[str, dict[str, float]] | None = None

    # -- construction -------------------------------------------------------

    @classmethod
    def from_edges(cls, edges, extra_nodes=()) -> "WordGraph":
        """Build from (word1, word2, weight) triples plus optional isolated nodes."""
        names: set[str] = set(extra_nodes)
        triples = []
        for w1, w2, weight in edges:
            if w1 == w2:
                raise ValueError(f"self-loop on {w1!r}")
            a, b = (w1, w2) if w1 < w2 else (w2, w1)
            triples.append((a, b, float(weight)))
            names.add(a)
            names.add(b)
        nodes = tuple(sorted(names))
        index = {w: i for i, w in enumerate(nodes)}
        triples.sort(key=lambda t: (t[0], t[1]))
        for i in range(1, len(triples)):
            if triples[i][:2] == triples[i - 1][:2]:
                raise ValueError(f"duplicate edge {triples[i][:2]}")
        edge_u = np.array([index[t[0]] for t in triples], dtype=np.int32)
        edge_v = np.array([index[t[1]] for t in triples], dtype=np.int32)
        edge_w = np.array([t[2] for t in triples], dtype=np.float64)
        return cls(nodes, edge_u, edge_v, edge_w)

    @classmethod
    def _from_index_edges(cls, nodes: tuple[str, ...], edge_u: np.ndarray, edge_v: np.ndarray,
                          edge_w: np.ndarray) -> "WordGraph":
        order = np.lexsort((edge_v, edge_u))
        return cls(nodes,
                   np.ascontiguousarray(edge_u[order], dtype=np.int32),
                   np.ascontiguousarray(edge_v[order], dtype=np.int32),
                   np.ascontiguousarray(edge_w[order], dtype=np.float64))

    # -- basic queries -------------------------------------------------------

    def number_of_nodes(self) -> int:
        return len(self.nodes)

    def number_of_edges(self) -> int:
        return len(self.edge_u)

    def has_node(self, word: str) -> bool:
        return word in self._index

    def edges(self):
        """Yield (word1, word2, weight) with word1 < word2, lexicographic order."""
        for u, v, w in zip(self.edge_u, self.edge_v, self.edge_w):
            yield self.nodes[u], self.nodes[v], float(w)

    def _adjacency(self) -> dict[str, dict[str, float]]:
        if self._adj is None:
            adj: dict[str, dict[str, float]] = {w: {} for w in self.nodes}
            for u, v, w in zip(self.edge_u, self.edge_v, self.edge_w):
                adj[self.nodes[u]][self.nodes[v]] = float(w)
                adj[self.nodes[v]][self.nodes[u]] = float(w)
            self._adj = adj
        return self._adj

    def neighbors(self, word: str) -> dict[str, float]:
        return self._adjacency()[word]

    def weight(self, w1: str, w2: str) -> float:
        try:
            return self._adjacency()[w1][w2]
        except KeyError:
            raise KeyError(f"no edge between {w1!r} and {w2!r}") from None

    def has_edge(self, w1: str, w2: str) -> bool:
        return w1 in self._index and w2 in self._adjacency()[w1]

    def degree(self, word: str) -> int:
        return len(self._adjacency()[word])

    def degrees(self) -> np.ndarray:
        """Degree per node, in node order."""
        counts = np.zeros(len(self.nodes), dtype=np.int64)
        np.add.at(counts, self.edge_u, 1)
        np.add.at(counts, self.edge_v, 1)
        return counts

    # -- derived graphs ------------------------------------------------------

    def subgraph(self, words) -> "WordGraph":
        """Induced subgraph on ``words`` (all must be nodes)."""
        keep = sorted(set(words))
        for w in keep:
            if w not in self._index:
                raise KeyError(f"{w!r} is not a node of this graph")
        member = np.zeros(len(self.nodes), dtype=bool)
        member[[self._index[w] for w in keep]] = True
        mask = member[self.edge_u] & member[self.edge_v]
        remap = np.cumsum(member) - 1
        return WordGraph._from_index_edges(
            tuple(keep),
            remap[self.edge_u[mask]].astype(np.int32),
            remap[self.edge_v[mask]].astype(np.int32),
            self.edge_w[mask],
        )

    def filter_edges(self, mask: np.ndarray) -> "WordGraph":
        """Same nodes, keeping only the edges selected by ``mask``."""
        return WordGraph(self.nodes, self.edge_u[mask], self.edge_v[mask], self.edge_w[mask])


# ---------------------------------------------------------------------------
# Construction and pruning
# ---------------------------------------------------------------------------


def build_complete_graph(vocab: Vocabulary, emb: EmbeddingTable,
                         node_cap: int = DEFAULT_NODE_CAP) -> WordGraph:
    """Complete graph over the embedded vocabulary, edges weighted by cosine.

    Vocabulary words without an embedding are dropped (count logged).
    Materialising all n*(n-1)/2 edges is quadratic by design, so graphs
    above ``node_cap`` nodes are refused outright.
    """
    embedded = sorted(w for w in vocab.words if w in emb)
    missing = len(vocab) - len(embedded)
    if missing:
        logger.warning("dropped %d vocabulary words without an embedding", missing)
    n = len(embedded)
    if n < 2:
        raise DataError(f"need at least 2 embedded words to build a graph, have {n}")
    if n > node_cap:
        raise DataError(
            f"{n} embedded words exceed the complete-graph node cap of {node_cap}; "
            "raise node_cap explicitly if the quadratic edge count is acceptable"
        )
    mat = emb.matrix(embedded)
    norms = np.linalg.norm(mat, axis=1)
    if np.any(norms == 0):
        zero = [embedded[i] for i in np.nonzero(norms == 0)[0][:5]]
        raise DataError(f"zero-norm embedding(s), e.g. {zero}; cosine is undefined")
    unit = mat / norms[:, None]
    sim = np.clip(unit @ unit.T, -1.0, 1.0)
    iu, iv = np.triu_indices(n, k=1)
    return WordGraph(tuple(embedded),
                     iu.astype(np.int32), iv.astype(np.int32),
                     sim[iu, iv].astype(np.float64))


def remove_isolated(g: WordGraph) -> WordGraph:
    """Drop degree-zero nodes; edges are untouched."""
    keep = g.degrees() > 0
    if keep.all():
        return g
    remap = np.cumsum(keep) - 1
    nodes = tuple(w for w, k in zip(g.nodes, keep) if k)
    return WordGraph(nodes,
                     remap[g.edge_u].astype(np.int32),
                     remap[g.edge_v].astype(np.int32),
                     g.edge_w)


def prune_percentile(g: WordGraph, percentile_rank: float) -> WordGraph:
    """Keep edges whose weight is >= the given percentile of all edge weights.

    The threshold is the linearly interpolated percentile of the edge-weight
    multiset; edges strictly below it are removed, then isolated nodes are
    dropped.
    """
    if not 0.0 <= percentile_rank <= 100.0:
        raise ValueError(f"percentile_rank must be in [0, 100], got {percentile_rank}")
    if g.number_of_edges() == 0:
        raise DataError("cannot prune a graph with no edges")
    threshold = float(np.percentile(g.edge_w, percentile_rank))
    return remove_isolated(g.filter_edges(g.edge_w >= threshold))


def percentile_threshold(g: WordGraph, percentile_rank: float) -> float:
    """The edge-weight threshold :func:`prune_percentile` would apply."""
    if g.number_of_edges() == 0:
        raise DataError("graph has no edges")
    return float(np.percentile(g.edge_w, percentile_rank))


def prune_top_m(g: WordGraph, m: int) -> WordGraph:
    """Keep each node's m highest-weighted incident edges (union over nodes).

    An edge survives if it ranks in the top m for either endpoint.  Ties at
    rank m are broken by lexicographic neighbor order.  Isolated nodes are
    removed afterwards.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if g.number_of_edges() == 0:
        raise DataError("cannot prune a graph with no edges")
    e = g.number_of_edges()
    edge_id = np.arange(e)
    owner = np.concatenate([g.edge_u, g.edge_v])
    nbr = np.concatenate([g.edge_v, g.edge_u])
    w = np.concatenate([g.edge_w, g.edge_w])
    ids = np.concatenate([edge_id, edge_id])
    # Sort by (owner, weight desc, neighbor asc); rank within owner groups.
    order = np.lexsort((nbr, -w, owner))
    owner_sorted = owner[order]
    boundaries = np.flatnonzero(np.diff(owner_sorted)) + 1
    starts = np.concatenate([[0], boundaries])
    group_start = np.repeat(starts, np.diff(np.concatenate([starts, [len(owner_sorted)]])))
    rank = np.arange(len(owner_sorted)) - group_start
    kept_ids = ids[order][rank < m]
    mask = np.zeros(e, dtype=bool)
    mask[kept_ids] = True
    return remove_isolated(g.filter_edges(mask))


def dump_edge_list(g: WordGraph) -> str:
    """Edge list dump: ``word1<TAB>word2<TAB>weight`` with 9 decimals, sorted."""
    return "".join(f"{u}\t{v}\t{w:.9f}\n" for u, v, w in g.edges())


def write_edge_list(g: WordGraph, path: str | Path) -> None:
    Path(path).write_text(dump_edge_list(g), encoding="utf-8")
