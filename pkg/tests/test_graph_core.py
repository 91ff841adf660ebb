from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anonelect.corpus import CounterRng, random_graph
from anonelect.families import gen_ring_cliques
from anonelect.graph_core import (
    GraphError,
    GraphFormatError,
    PathError,
    PortGraph,
    bfs_distances,
    canonical_bfs_tree,
    complete_graph,
    cycle_graph,
    diameter,
    follow_path,
    format_graph,
    parse_graph,
    path_graph,
    star_graph,
    validate,
)
from oracles import all_pairs_distances, brute_diameter


def graphs(min_n=3, max_n=12):
    @st.composite
    def build(draw):
        n = draw(st.integers(min_n, max_n))
        extra = draw(st.integers(0, n))
        seed = draw(st.integers(0, 10**6))
        return random_graph(n, extra, CounterRng(seed))

    return build()


def test_p3_is_valid():
    validate(path_graph(3))


def test_port_gap_rejected():
    g = PortGraph(3, ((0, 0, 1, 0), (1, 2, 2, 0)))
    with pytest.raises(GraphError, match="port range"):
        validate(g)


def test_reciprocity_mutation_rejected():
    from anonelect.graph_core import validate_adjacency

    adj = [list(a) for a in path_graph(4).adj]
    v, q = adj[1][1]
    adj[1][1] = (v, q + 1)  # points at a port that does not lead back
    with pytest.raises(GraphError, match="reciprocity"):
        validate_adjacency(adj)


def test_small_and_disconnected_rejected():
    with pytest.raises(GraphError, match="n < 3"):
        PortGraph.build(2, [(0, 0, 1, 0)])
    with pytest.raises(GraphError, match="disconnected"):
        PortGraph.build(4, [(0, 0, 1, 0), (2, 0, 3, 0)])


def test_self_loop_and_multi_edge():
    with pytest.raises(GraphError, match="self-loop"):
        PortGraph.build(3, [(0, 0, 0, 1), (0, 2, 1, 0), (1, 1, 2, 0)])
    with pytest.raises(GraphError, match="multi-edge"):
        PortGraph.build(3, [(0, 0, 1, 0), (0, 1, 1, 1), (1, 2, 2, 0)])


def test_diameter_examples():
    assert diameter(path_graph(3)) == 2
    assert diameter(complete_graph(4)) == 1
    g = gen_ring_cliques(8, 4)
    assert diameter(g) == brute_diameter(g)


def test_bfs_star_rooted_at_center():
    g = star_graph(4)
    t = canonical_bfs_tree(g, 0, range(g.n))
    assert all(t.parent[u][0] == 0 for u in range(1, g.n))


def test_bfs_four_cycle_antipode_uses_smaller_port():
    g = cycle_graph(4)
    for root in range(4):
        t = canonical_bfs_tree(g, root, range(4))
        far = (root + 2) % 4
        candidates = [(p, w) for p, (w, _) in enumerate(g.adj[far])]
        assert t.parent[far][0] == min(candidates)[1]
        assert t.parent[far][1] == min(candidates)[0]


def test_bfs_p3_from_endpoint_is_a_path():
    g = path_graph(3)
    t = canonical_bfs_tree(g, 0, range(3))
    assert t.parent[1][0] == 0 and t.parent[2][0] == 1


def test_labels_must_be_injective():
    with pytest.raises(ValueError):
        canonical_bfs_tree(path_graph(3), 0, [1, 1, 2])


def test_follow_path_examples():
    g = path_graph(3)  # middle node 1: port 0 -> node 0, port 1 -> node 2
    assert follow_path(g, 0, ()) == (0, True)
    assert follow_path(g, 0, (0, 0)) == (1, True)
    assert follow_path(g, 0, (0, 0, 0, 0)) == (0, False)
    with pytest.raises(PathError, match="bad port"):
        follow_path(g, 0, (1, 0))
    with pytest.raises(PathError, match="reverse mismatch"):
        follow_path(g, 0, (0, 1))


def test_text_format_roundtrip_and_line_numbers():
    g = gen_ring_cliques(4, 3)
    text = format_graph(g)
    assert parse_graph(text) == g
    assert format_graph(parse_graph(text)) == text
    with pytest.raises(GraphFormatError, match="line 3"):
        parse_graph("n 3\ne 0 0 1 0\ne 1 0 2 0\n")
    with pytest.raises(GraphFormatError, match="line 2"):
        parse_graph("n 3\ne 0 x 1 0\n")


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_degree_sum_even_and_ports_round_trip(g):
    assert sum(g.degrees) % 2 == 0
    for u in range(g.n):
        for p, (v, q) in enumerate(g.adj[u]):
            assert g.adj[v][q] == (u, p)


@settings(max_examples=60, deadline=None)
@given(graphs(), st.integers(0, 100))
def test_bfs_depths_match_independent_distances(g, r):
    root = r % g.n
    t = canonical_bfs_tree(g, root, range(g.n))
    dist = all_pairs_distances(g)
    assert list(t.depth) == [dist[root][u] for u in range(g.n)]
    assert t.depth == tuple(bfs_distances(g, root)[u] for u in range(g.n))


@settings(max_examples=60, deadline=None)
@given(graphs(), st.integers(0, 100))
def test_tree_path_reaches_root_simply(g, r):
    root = r % g.n
    t = canonical_bfs_tree(g, root, range(g.n))
    for u in range(g.n):
        end, simple = follow_path(g, u, t.path_to_root(u))
        assert end == root and simple
        # the parent is reached through the smallest port leading one level up
        if u != root:
            par, p, _ = t.parent[u]
            ups = [pp for pp, (w, _) in enumerate(g.adj[u]) if t.depth[w] == t.depth[u] - 1]
            assert p == min(ups)
