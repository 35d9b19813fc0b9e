"""Minimum cuts, k-edge-connected subgraphs, and the level hierarchy,
checked against exhaustive enumeration oracles."""

import pytest

from graphtopics import (
    build_hierarchy,
    connected_components,
    edge_connectivity,
    global_min_cut,
    k_edge_subgraphs,
)

from conftest import indexed_graph, names_to_indices, unit_graph
from oracles import (
    k_edge_subgraphs_brute,
    min_cut_brute,
    random_connected_graph,
    random_graph_edges,
)

# two triangles {0,1,2} and {3,4,5} joined by the single bridge 2-3
TRIANGLES_BRIDGE = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)]
# same, but the bridge runs through a middle node 6: 2-6 and 6-3
TRIANGLES_MIDDLE = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 6), (6, 3)]


def complete_edges(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


class TestConnectedComponents:
    def test_two_disjoint_edges(self):
        g = unit_graph([("a", "b"), ("c", "d")])
        assert connected_components(g) == [{"a", "b"}, {"c", "d"}]

    def test_empty_graph(self):
        g = unit_graph([])
        assert connected_components(g) == []

    def test_path(self):
        g = unit_graph([("a", "b"), ("b", "c")])
        assert connected_components(g) == [{"a", "b", "c"}]

    def test_singletons_included(self):
        g = unit_graph([("a", "b")], extra_nodes=["z"])
        assert connected_components(g) == [{"a", "b"}, {"z"}]


class TestGlobalMinCut:
    def test_two_triangles_bridge(self):
        g = indexed_graph(6, TRIANGLES_BRIDGE)
        cut = global_min_cut(g)
        assert cut.value == 1
        sides = {frozenset(names_to_indices(cut.side_a)),
                 frozenset(names_to_indices(cut.side_b))}
        assert sides == {frozenset({0, 1, 2}), frozenset({3, 4, 5})}
        assert cut.value == min_cut_brute(6, TRIANGLES_BRIDGE)

    def test_complete_k4(self):
        g = indexed_graph(4, complete_edges(4))
        cut = global_min_cut(g)
        assert cut.value == 3
        assert cut.value == min_cut_brute(4, complete_edges(4))

    def test_single_edge(self):
        g = unit_graph([("a", "b")])
        cut = global_min_cut(g)
        assert cut.value == 1
        assert {cut.side_a, cut.side_b} == {frozenset({"a"}), frozenset({"b"})}

    def test_disconnected_rejected(self):
        with pytest.raises(ValueError):
            global_min_cut(unit_graph([("a", "b"), ("c", "d")]))

    def test_too_small_rejected(self):
        with pytest.raises(ValueError):
            global_min_cut(unit_graph([], extra_nodes=["a"]))

    def test_matches_brute_force_on_random_graphs(self, rng):
        for trial in range(40):
            n = int(rng.integers(3, 11))
            edges = random_connected_graph(rng, n, float(rng.uniform(0.3, 0.7)))
            g = indexed_graph(n, edges)
            cut = global_min_cut(g)
            assert cut.value == min_cut_brute(n, edges), f"trial {trial}"
            # the returned sides really form a cut of the claimed size
            side_a = names_to_indices(cut.side_a)
            crossing = sum(1 for u, v in edges if (u in side_a) != (v in side_a))
            assert crossing == cut.value
            assert side_a and names_to_indices(cut.side_b)

    def test_deterministic(self, rng):
        edges = random_connected_graph(rng, 9, 0.4)
        g1, g2 = indexed_graph(9, edges), indexed_graph(9, edges)
        c1, c2 = global_min_cut(g1), global_min_cut(g2)
        assert (c1.value, c1.side_a, c1.side_b) == (c2.value, c2.side_a, c2.side_b)


class TestEdgeConnectivity:
    def test_cycle_is_two(self):
        cycle = [(i, (i + 1) % 5) for i in range(5)]
        assert edge_connectivity(indexed_graph(5, cycle)) == 2

    def test_tree_is_one(self):
        tree = [(0, 1), (1, 2), (1, 3), (3, 4)]
        assert edge_connectivity(indexed_graph(5, tree)) == 1

    def test_disconnected_is_zero(self):
        assert edge_connectivity(unit_graph([("a", "b"), ("c", "d")])) == 0

    def test_single_node_rejected(self):
        with pytest.raises(ValueError):
            edge_connectivity(unit_graph([], extra_nodes=["a"]))

    def test_complete_graph(self):
        assert edge_connectivity(indexed_graph(6, complete_edges(6))) == 5


class TestKEdgeSubgraphs:
    def test_two_triangles_bridge_k2(self):
        g = indexed_graph(6, TRIANGLES_BRIDGE)
        result = [names_to_indices(c) for c in k_edge_subgraphs(g, 2)]
        assert result == k_edge_subgraphs_brute(6, TRIANGLES_BRIDGE, 2)
        assert result == [frozenset({0, 1, 2}), frozenset({3, 4, 5})]

    def test_k1_equals_components_of_size_two_plus(self):
        g = unit_graph([("a", "b"), ("c", "d"), ("d", "e")], extra_nodes=["z"])
        assert k_edge_subgraphs(g, 1) == [{"a", "b"}, {"c", "d", "e"}]

    def test_k5_at_k4(self):
        g = indexed_graph(5, complete_edges(5))
        assert [names_to_indices(c) for c in k_edge_subgraphs(g, 4)] == [frozenset(range(5))]

    def test_idempotent_on_own_output(self, rng):
        for _ in range(10):
            n = int(rng.integers(4, 10))
            edges = random_graph_edges(rng, n, 0.5)
            g = indexed_graph(n, edges)
            for k in (1, 2, 3):
                for comp in k_edge_subgraphs(g, k):
                    again = k_edge_subgraphs(g.subgraph(comp), k)
                    assert again == [set(comp)]

    def test_invalid_k(self):
        with pytest.raises(ValueError):
            k_edge_subgraphs(unit_graph([("a", "b")]), 0)

    def test_matches_brute_force_on_random_graphs(self, rng):
        for trial in range(30):
            n = int(rng.integers(3, 9))
            edges = random_graph_edges(rng, n, float(rng.uniform(0.3, 0.7)))
            g = indexed_graph(n, edges)
            for k in (1, 2, 3):
                got = [frozenset(names_to_indices(c)) for c in k_edge_subgraphs(g, k)]
                expected = k_edge_subgraphs_brute(n, edges, k)
                assert got == expected, f"trial {trial}, k={k}, edges={edges}"


class TestBuildHierarchy:
    def test_triangles_with_middle_node(self):
        g = indexed_graph(7, TRIANGLES_MIDDLE)
        hierarchy = build_hierarchy(g, 2)
        level1 = hierarchy.components(1)
        assert len(level1) == 1
        assert len(level1[0].members) == 7
        level2 = hierarchy.components(2)
        assert [names_to_indices(c.members) for c in level2] == [
            frozenset({0, 1, 2}), frozenset({3, 4, 5})]
        assert all(c.parent is level1[0] for c in level2)
        expected = k_edge_subgraphs_brute(7, TRIANGLES_MIDDLE, 2)
        assert [frozenset(names_to_indices(c.members)) for c in level2] == expected

    def test_edgeless_graph_empty_hierarchy(self):
        g = unit_graph([], extra_nodes=["a", "b", "c"])
        hierarchy = build_hierarchy(g, 3)
        assert all(hierarchy.components(k) == [] for k in (1, 2, 3))

    def test_k5_chained_parents(self):
        g = indexed_graph(5, complete_edges(5))
        hierarchy = build_hierarchy(g, 3)
        for k in (1, 2, 3):
            comps = hierarchy.components(k)
            assert len(comps) == 1
            assert names_to_indices(comps[0].members) == frozenset(range(5))
        assert hierarchy.components(2)[0].parent is hierarchy.components(1)[0]
        assert hierarchy.components(3)[0].parent is hierarchy.components(2)[0]

    def test_nesting_and_disjointness_on_random_graphs(self, rng):
        for _ in range(25):
            n = int(rng.integers(4, 11))
            edges = random_graph_edges(rng, n, float(rng.uniform(0.3, 0.7)))
            hierarchy = build_hierarchy(indexed_graph(n, edges), 3)
            for k in (1, 2, 3):
                comps = hierarchy.components(k)
                # disjointness within a level
                seen: set[str] = set()
                for c in comps:
                    assert not (c.members & seen)
                    seen |= c.members
                if k == 1:
                    continue
                # every component nests in exactly one parent
                parents = hierarchy.components(k - 1)
                for c in comps:
                    containing = [p for p in parents if c.members <= p.members]
                    assert len(containing) == 1
                    assert c.parent is containing[0]

    def test_levels_match_global_decomposition(self, rng):
        # computing level k inside the level-(k-1) parents must equal
        # running the decomposition on the whole graph
        for _ in range(15):
            n = int(rng.integers(4, 10))
            edges = random_graph_edges(rng, n, 0.5)
            g = indexed_graph(n, edges)
            hierarchy = build_hierarchy(g, 3)
            for k in (2, 3):
                from_hierarchy = sorted(
                    (sorted(c.members) for c in hierarchy.components(k)))
                direct = sorted(sorted(c) for c in k_edge_subgraphs(g, k))
                assert from_hierarchy == direct

    def test_json_dump_shape(self):
        g = indexed_graph(6, TRIANGLES_BRIDGE)
        payload = build_hierarchy(g, 2).to_json_dict()
        assert set(payload["levels"]) == {"1", "2"}
        assert payload["levels"]["2"] == [["n00", "n01", "n02"], ["n03", "n04", "n05"]]

    def test_invalid_k_max(self):
        with pytest.raises(ValueError):
            build_hierarchy(unit_graph([("a", "b")]), 0)
