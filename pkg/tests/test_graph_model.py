import random

import pytest

from graphbu.corpus import complete, cycle, h_tree, path_graph, random_graph, star_y
from graphbu.graph_model import (
    Graph,
    GraphError,
    essential_vertex,
    format_graph,
    order_graph,
    parse_graph,
    subdivide_to_simplicial,
)


def test_graph_validation():
    with pytest.raises(GraphError):
        Graph.from_adjacency({0: [0]})
    with pytest.raises(GraphError):
        Graph.from_adjacency({0: [1], 1: []})
    with pytest.raises(GraphError):
        Graph.from_adjacency({0: [1], 1: [0], 2: [3], 3: [2]})


def test_subdivide_triangle_unchanged():
    g = subdivide_to_simplicial([(0, 1), (1, 2), (2, 0)])
    assert len(g.vertices) == 3 and len(g.edges) == 3


def test_subdivide_loop_gives_triangle():
    g = subdivide_to_simplicial([(0, 0)])
    assert len(g.vertices) == 3 and len(g.edges) == 3
    assert g.betti_number() == 1


def test_subdivide_parallel_pair_gives_square():
    g = subdivide_to_simplicial([(0, 1), (0, 1)])
    assert len(g.vertices) == 4 and all(g.degree(v) == 2 for v in g.vertices)
    # betti number |E| - |V| + 1 before subdividing
    assert g.betti_number() == 2 - 2 + 1


def test_parse_and_format_round_trip():
    g = complete(4)
    h, extra = parse_graph(format_graph(g))
    assert h == g and extra == []


def test_parse_errors_carry_line_numbers():
    with pytest.raises(GraphError, match="line 2"):
        parse_graph("graph 2\nv 0 1\nv 1: 0\n")
    with pytest.raises(GraphError):
        parse_graph("v 0: 1\nv 1: 0\n")


def test_order_star_y():
    og = order_graph(star_y(), root=0)
    assert [og.label(i) for i in og.vertices] == [0, 1, 2, 3]
    assert [og.tree_edge(v) for v in (1, 2, 3)] == [(0, 1), (1, 2), (1, 3)]
    assert og.deleted_edges == ()
    assert essential_vertex(og) == (1, 2, 3)


def test_order_follows_embedding():
    # leaves listed in the other cyclic order at the centre
    g = Graph.from_adjacency({"r": ["c"], "c": ["r", "b", "a"], "a": ["c"], "b": ["c"]})
    og = order_graph(g, root="r")
    assert [og.label(i) for i in og.vertices] == ["r", "c", "b", "a"]


def test_root_must_be_tree_leaf():
    with pytest.raises(GraphError):
        order_graph(star_y(), root=1)
    # root of tree-degree 2
    with pytest.raises(GraphError):
        order_graph(cycle(4), root=0, tree=[(3, 0), (0, 1), (1, 2)])
    # a cycle is accepted: its depth-first tree is a path rooted at an end
    og = order_graph(cycle(4))
    assert og.deleted_edges == ((0, 3),)


def test_bad_tree_rejected():
    with pytest.raises(GraphError):
        order_graph(complete(4), root=0, tree=[(0, 1), (1, 2)])
    with pytest.raises(GraphError):
        order_graph(complete(4), root=0, tree=[(0, 1), (1, 2), (2, 0)])


def test_k4_deleted_edges():
    og = order_graph(complete(4))
    assert len(og.deleted_edges) == 3 == 1 - complete(4).euler_characteristic()
    assert essential_vertex(og) is None


def test_essential_vertex_cases():
    assert essential_vertex(order_graph(path_graph(5), root=0)) is None
    og = order_graph(h_tree(), root=0)
    children = {v: og.children(v) for v in og.vertices}
    v = min(u for u in og.vertices if len(children[u]) >= 2)
    assert essential_vertex(og) == (v, *sorted(children[v])[:2])


def test_random_orderings_are_consistent():
    rng = random.Random(11)
    for _ in range(30):
        g = random_graph(rng)
        og = order_graph(g)
        assert og.label(0) == og.root
        for v in og.vertices[1:]:
            # the parent lies on the tree path back to the root
            assert og.tree_path_to_root(v)[1] == og.parent[v]
            assert og.parent[v] < v
        for x, y in og.deleted_edges:
            assert x + 1 < y
        keys = [(y, -x) for x, y in og.deleted_edges]
        assert keys == sorted(keys)
        assert len(og.deleted_edges) == g.betti_number()
