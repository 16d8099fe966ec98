import itertools

import pytest

from graphbu.config_complex import (
    Cell,
    build_ordered,
    build_unordered,
    disjoint,
    lift_path,
    lifts,
    path_end,
    project,
    project_path,
)
from graphbu.corpus import complete, named_graphs, path_graph, star_y
from graphbu.graph_model import order_graph


def brute_force_counts(og):
    """Count ordered cells by enumerating all pairs of closed cells of G."""
    ingredients = list(og.vertices) + list(og.edges)
    counts = [0, 0, 0]
    for x, y in itertools.product(ingredients, repeat=2):
        if disjoint(x, y):
            counts[(not isinstance(x, int)) + (not isinstance(y, int))] += 1
    return tuple(counts)


def test_interval_has_two_points():
    d2 = build_ordered(order_graph(path_graph(2)))
    assert d2.cells[0] == (Cell(0, 1), Cell(1, 0))
    assert d2.counts() == (2, 0, 0)


def test_star_y_counts():
    og = order_graph(star_y())
    d2, ud2 = build_ordered(og), build_unordered(og)
    assert d2.counts() == (12, 12, 0)
    assert ud2.counts() == (6, 6, 0)


@pytest.mark.parametrize("name", sorted(named_graphs()))
def test_counts_match_enumeration(name):
    og = order_graph(named_graphs()[name])
    d2, ud2 = build_ordered(og), build_unordered(og)
    assert d2.counts() == brute_force_counts(og)
    assert tuple(2 * n for n in ud2.counts()) == d2.counts()
    assert {project(c) for dim in d2.cells for c in dim} == {c for dim in ud2.cells for c in dim}


def test_unordered_cells_canonical():
    a = Cell((1, 3), 2, ordered=False)
    b = Cell(2, (1, 3), ordered=False)
    assert a == b and str(a) == "{2,(1,3)}"
    assert project(Cell(2, (1, 3))) == b
    assert project(Cell((1, 3), 2)) == b


def test_swap_is_free_and_lifts_project():
    og = order_graph(complete(4))
    d2 = build_ordered(og)
    for dim in d2.cells:
        for c in dim:
            assert c.swap() != c
    for c in build_unordered(og).cells[1]:
        for lift in lifts(c):
            assert project(lift) == c


def test_hasse_arrows_drop_dimension():
    d2 = build_ordered(order_graph(complete(4)))
    for upper, lower in d2.hasse:
        assert upper.dim == lower.dim + 1


def test_lift_path_basic():
    assert lift_path([], Cell(0, 1)) == []
    step = (Cell(2, (1, 3), ordered=False), 1)
    lifted = lift_path([step], Cell(2, 1))
    assert lifted == [(Cell(2, (1, 3)), 1)]
    assert path_end(lifted, Cell(2, 1)) == Cell(2, 3)
    with pytest.raises(ValueError):
        lift_path([step], Cell(0, 1))


def test_lifts_of_loop_differ_by_swap():
    og = order_graph(complete(4))
    ud2 = build_unordered(og)
    # walk a few unordered edges from {0,1} and lift from both sheets
    loop, current = [], Cell(0, 1, ordered=False)
    for c in ud2.cells[1]:
        tail, head = c.faces()
        if tail == current:
            loop.append((c, 1))
            current = head
        if len(loop) == 4:
            break
    assert loop
    a = lift_path(loop, Cell(0, 1))
    b = lift_path(loop, Cell(1, 0))
    assert [(c.swap(), s) for c, s in a] == b
    assert project_path(a) == project_path(b) == loop


def test_dump_is_sorted_and_stable():
    og = order_graph(star_y())
    text = build_unordered(og).dump()
    assert text == build_unordered(order_graph(star_y())).dump()
    assert "{0,1}:0" in text.splitlines()
