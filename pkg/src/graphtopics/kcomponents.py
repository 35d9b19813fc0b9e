"""Decomposition of word graphs into maximal k-edge-connected subgraphs.

Connectivity is structural: every surviving edge counts 1 regardless of its
cosine weight.  The decomposition is unique (a k-edge-connected subgraph can
never straddle a cut of fewer than k edges), so the splitter is free to pick
any sub-k cut it can find cheaply: connected components first, then nodes of
degree < k, then bridges, and only then a Stoer-Wagner global minimum cut.
All tie-breaking follows lexicographic node order, so results are identical
across runs and thread counts.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .simgraph import WordGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cut:
    """A graph cut: crossing-edge count plus the two node sides."""

    value: int
    side_a: frozenset[str]
    side_b: frozenset[str]


@dataclass(eq=False)
class KComponent:
    """A maximal subgraph with edge connectivity >= level."""

    level: int
    members: frozenset[str]
    parent: "KComponent | None" = None


@dataclass
class ComponentHierarchy:
    """Components per level 1..k_max; level-(K+1) members nest inside level K."""

    levels: dict[int, list[KComponent]]
    k_max: int

    def components(self, level: int) -> list[KComponent]:
        return self.levels.get(level, [])

    def to_json_dict(self) -> dict:
        return {
            "levels": {
                str(k): [sorted(c.members) for c in comps]
                for k, comps in sorted(self.levels.items())
            }
        }


# ---------------------------------------------------------------------------
# Index-level helpers (adjacency dicts over integer node ids)
# ---------------------------------------------------------------------------


def _adjacency_sets(g: WordGraph) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {i: set() for i in range(g.number_of_nodes())}
    for u, v in zip(g.edge_u, g.edge_v):
        adj[int(u)].add(int(v))
        adj[int(v)].add(int(u))
    return adj


def _components_of(adj: dict[int, set[int]]) -> list[set[int]]:
    """Connected components, listed by ascending smallest member."""
    seen: set[int] = set()
    comps: list[set[int]] = []
    for start in sorted(adj):
        if start in seen:
            continue
        comp = {start}
        frontier = [start]
        while frontier:
            node = frontier.pop()
            for nbr in adj[node]:
                if nbr not in comp:
                    comp.add(nbr)
                    frontier.append(nbr)
        seen |= comp
        comps.append(comp)
    return comps


def _restrict(adj: dict[int, set[int]], nodes: set[int]) -> dict[int, set[int]]:
    return {i: adj[i] & nodes for i in nodes}


def _peel_below(adj: dict[int, set[int]], k: int) -> set[int]:
    """Remove nodes of degree < k until none remain; returns the removed set.

    A node of degree < k sits on a cut of fewer than k edges, so no
    k-edge-connected subgraph of two or more nodes can contain it.
    """
    queue = [i for i, nbrs in adj.items() if len(nbrs) < k]
    removed: set[int] = set()
    while queue:
        i = queue.pop()
        if i in removed:
            continue
        removed.add(i)
        for j in adj.pop(i):
            adj[j].discard(i)
            if len(adj[j]) < k:
                queue.append(j)
    return removed


def _bridges(adj: dict[int, set[int]]) -> list[tuple[int, int]]:
    """All bridges, via an iterative lowpoint DFS (no recursion limits)."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    bridges: list[tuple[int, int]] = []
    counter = 0
    for root in sorted(adj):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, iter(sorted(adj[root])))]
        while stack:
            node, parent, it = stack[-1]
            advanced = False
            for nbr in it:
                if nbr == parent:
                    continue
                if nbr in disc:
                    low[node] = min(low[node], disc[nbr])
                else:
                    disc[nbr] = low[nbr] = counter
                    counter += 1
                    stack.append((nbr, node, iter(sorted(adj[nbr]))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if parent >= 0:
                    low[parent] = min(low[parent], low[node])
                    if low[node] > disc[parent]:
                        bridges.append((parent, node))
    return bridges


def _stoer_wagner_dense(weights: np.ndarray) -> tuple[int, list[int]]:
    """Global minimum cut of a connected graph given as a dense int matrix.

    Returns (cut value, indices of one side).  Each phase runs a maximum
    adjacency search starting from the lowest-index live supernode; weight
    ties always resolve to the lowest index, and merges keep the lower
    index alive, so the merge sequence (and hence the returned cut) is a
    deterministic function of the input ordering.
    """
    n = weights.shape[0]
    w = weights.astype(np.int64).copy()
    alive = np.ones(n, dtype=bool)
    members: list[list[int]] = [[i] for i in range(n)]
    best_value: int | None = None
    best_side: list[int] = []
    for _ in range(n - 1):
        live = np.flatnonzero(alive)
        start = int(live[0])
        in_a = np.zeros(n, dtype=bool)
        in_a[start] = True
        attach = w[start].copy()
        prev = start
        last = start
        cut_of_phase = 0
        for _ in range(len(live) - 1):
            candidates = np.flatnonzero(alive & ~in_a)
            # argmax returns the first maximum, i.e. the lowest index.
            pick = int(candidates[np.argmax(attach[candidates])])
            cut_of_phase = int(attach[pick])
            prev, last = last, pick
            in_a[pick] = True
            attach += w[pick]
        if best_value is None or cut_of_phase < best_value:
            best_value = cut_of_phase
            best_side = list(members[last])
        target, source = (prev, last) if prev < last else (last, prev)
        w[target, :] += w[source, :]
        w[:, target] += w[:, source]
        w[target, target] = 0
        members[target].extend(members[source])
        alive[source] = False
    assert best_value is not None
    return best_value, sorted(best_side)


def _min_cut_on_adj(adj: dict[int, set[int]]) -> tuple[int, set[int]]:
    nodes = sorted(adj)
    local = {node: i for i, node in enumerate(nodes)}
    n = len(nodes)
    w = np.zeros((n, n), dtype=np.int64)
    for node, nbrs in adj.items():
        for nbr in nbrs:
            w[local[node], local[nbr]] = 1
    value, side = _stoer_wagner_dense(w)
    return value, {nodes[i] for i in side}


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def connected_components(g: WordGraph) -> list[set[str]]:
    """Connected components as word sets, ordered by smallest member.

    Singleton components (isolated nodes) are included; level-1 topic
    extraction ignores them via :func:`k_edge_subgraphs`.
    """
    adj = _adjacency_sets(g)
    comps = [{g.nodes[i] for i in comp} for comp in _components_of(adj)]
    singletons = sum(1 for c in comps if len(c) == 1)
    if singletons:
        logger.debug("%d singleton component(s)", singletons)
    return comps


def global_min_cut(g: WordGraph) -> Cut:
    """Stoer-Wagner minimum cut of the unit-weight graph.

    Requires a connected graph with at least 2 nodes.  ``side_a`` is the
    side containing the lexicographically smallest node.
    """
    n = g.number_of_nodes()
    if n < 2:
        raise ValueError("minimum cut needs at least 2 nodes")
    adj = _adjacency_sets(g)
    if len(_components_of(adj)) != 1:
        raise ValueError("minimum cut is defined only for connected graphs")
    value, side = _min_cut_on_adj(adj)
    side_words = frozenset(g.nodes[i] for i in side)
    other = frozenset(set(g.nodes) - side_words)
    if min(side_words) < min(other):
        return Cut(value, side_words, other)
    return Cut(value, other, side_words)


def edge_connectivity(g: WordGraph) -> int:
    """Minimum number of edges whose removal disconnects the graph."""
    n = g.number_of_nodes()
    if n < 2:
        raise ValueError("edge connectivity needs at least 2 nodes")
    adj = _adjacency_sets(g)
    if len(_components_of(adj)) != 1:
        return 0
    value, _ = _min_cut_on_adj(adj)
    return value


def k_edge_subgraphs(g: WordGraph, k: int) -> list[set[str]]:
    """Maximal node sets whose induced subgraph has edge connectivity >= k.

    Only sets of two or more nodes are returned, ordered by smallest
    member.  The result is the unique maximal decomposition; see the module
    docstring for why the internal cut choices cannot change it.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    adj = _adjacency_sets(g)
    out: list[set[int]] = []
    work: list[dict[int, set[int]]] = [adj]
    while work:
        piece = work.pop()
        if len(piece) < 2:
            continue
        comps = _components_of(piece)
        if len(comps) > 1:
            work.extend(_restrict(piece, comp) for comp in comps)
            continue
        if k == 1:
            out.append(set(piece))
            continue
        if _peel_below(piece, k):
            work.append(piece)
            continue
        bridges = _bridges(piece)
        if bridges:
            for u, v in bridges:
                piece[u].discard(v)
                piece[v].discard(u)
            work.append(piece)
            continue
        value, side = _min_cut_on_adj(piece)
        if value >= k:
            out.append(set(piece))
            continue
        rest = set(piece) - side
        work.append(_restrict(piece, side))
        work.append(_restrict(piece, rest))
    word_sets = [{g.nodes[i] for i in comp} for comp in out]
    word_sets.sort(key=min)
    return word_sets


def build_hierarchy(g: WordGraph, k_max: int) -> ComponentHierarchy:
    """Levels 1..k_max, each computed inside its parent component.

    Level 1 holds the connected components of two or more nodes; level K
    splits each level-(K-1) component into its maximal K-edge-connected
    subgraphs, recording parent links.
    """
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    levels: dict[int, list[KComponent]] = {k: [] for k in range(1, k_max + 1)}
    levels[1] = [KComponent(1, frozenset(c)) for c in k_edge_subgraphs(g, 1)]
    for k in range(2, k_max + 1):
        for parent in levels[k - 1]:
            sub = g.subgraph(parent.members)
            for comp in k_edge_subgraphs(sub, k):
                levels[k].append(KComponent(k, frozenset(comp), parent))
        levels[k].sort(key=lambda c: min(c.members))
    return ComponentHierarchy(levels=levels, k_max=k_max)
