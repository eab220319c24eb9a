import pytest

from oracles import reachability_connected
from treespec.errors import Graph6Error, GraphError
from treespec.graph import (
    Graph,
    complete,
    cycle,
    disjoint_union,
    emit_edge_list,
    emit_graph6,
    empty,
    is_bipartite,
    is_connected,
    is_tree,
    make_graph,
    named_graph,
    parse_edge_list,
    parse_graph6,
    path,
    read_graph,
    star,
)
from treespec.search import enumerate_labeled_graphs


def test_make_graph_examples():
    k2 = make_graph(2, [(0, 1)])
    assert k2 == complete(2) and k2.edge_count == 1
    c3 = make_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert c3 == cycle(3)
    assert make_graph(1, []) == empty(1)
    assert make_graph(3, [(0, 1), (1, 0), (0, 1)]).edge_count == 1


def test_make_graph_errors():
    with pytest.raises(GraphError):
        make_graph(2, [(0, 2)])
    with pytest.raises(GraphError):
        make_graph(2, [(1, 1)])


def test_named_graphs():
    p5 = path(5)
    assert (p5.order, p5.edge_count) == (5, 4)
    s = star(4)
    assert (s.order, s.edge_count, s.degree(0)) == (5, 4, 4)
    assert named_graph("empty", 1) == Graph(1)
    with pytest.raises(GraphError):
        cycle(2)
    with pytest.raises(GraphError):
        named_graph("wheel", 5)


def test_disjoint_union():
    u = disjoint_union([complete(2), complete(2)])
    assert (u.order, u.edge_count) == (4, 2)
    u = disjoint_union([complete(2), star(4)])
    assert (u.order, u.edge_count) == (7, 5)
    assert disjoint_union([]).order == 0


def test_connectivity_examples():
    assert is_connected(path(5))
    assert not is_connected(disjoint_union([complete(2), complete(2)]))
    assert is_connected(Graph(1))
    with pytest.raises(GraphError):
        is_connected(Graph(0))


def test_bipartite_examples():
    assert not is_bipartite(cycle(3))
    assert is_bipartite(path(5))
    gadget = make_graph(7, [(0, 1), (1, 2), (0, 2), (0, 3), (0, 4), (0, 5), (5, 6)])
    assert not is_bipartite(gadget)


def test_connectivity_matches_matrix_oracle():
    for n in range(1, 6):
        for g in enumerate_labeled_graphs(n):
            assert is_connected(g) == reachability_connected(g.adjacency_matrix())


def _has_odd_cycle(g: Graph) -> bool:
    # brute force: an odd closed walk exists iff some vertex reaches itself in odd steps
    a = g.adjacency_matrix()
    n = g.order
    reach = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for step in range(1, 2 * n + 1):
        reach = [[1 if any(reach[i][k] and a[k][j] for k in range(n)) else 0 for j in range(n)] for i in range(n)]
        if step % 2 and any(reach[i][i] for i in range(n)):
            return True
    return False


def test_bipartite_matches_odd_cycle_search():
    for n in range(1, 6):
        for g in enumerate_labeled_graphs(n):
            assert is_bipartite(g) == (not _has_odd_cycle(g))


def test_graph6_examples():
    assert emit_graph6(complete(2)) == "A_"
    assert parse_graph6(emit_graph6(path(5))) == path(5)
    with pytest.raises(Graph6Error):
        parse_graph6("garbage!")
    assert parse_graph6(">>graph6<<A_") == complete(2)


def test_graph6_round_trip_exhaustive():
    for n in range(0, 6):
        for g in enumerate_labeled_graphs(n) if n else [Graph(0)]:
            assert parse_graph6(emit_graph6(g)) == g


def test_graph6_large_order():
    g = path(100)
    s = emit_graph6(g)
    assert s[0] == "~"
    assert parse_graph6(s) == g


def test_graph6_rejects_bad_length_and_padding():
    with pytest.raises(Graph6Error):
        parse_graph6("B")
    # order 2 has one data bit; a nonzero padding bit must be rejected
    with pytest.raises(Graph6Error):
        parse_graph6("A" + chr(63 + 1))


def test_edge_list_round_trip():
    g = star(4)
    text = emit_edge_list(g)
    assert text.splitlines()[0] == "5 4"
    assert parse_edge_list(text) == g
    assert read_graph(text) == g
    assert read_graph("Bw") == complete(3)
    with pytest.raises(GraphError):
        parse_edge_list("3 2\n0 1\n")


def test_is_tree():
    assert is_tree(star(3)) and is_tree(Graph(1))
    assert not is_tree(cycle(4))
    assert not is_tree(disjoint_union([complete(2), Graph(1)]))
