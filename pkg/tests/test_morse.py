import random

import pytest

from graphbu.config_complex import Cell, build_ordered, build_unordered, project_path
from graphbu.corpus import circle_with_chord, complete, corpus, path_graph, star_y
from graphbu.graph_model import order_graph
from graphbu.morse import (
    Status,
    build_field,
    build_trees,
    classify_cell,
    normalize_loop,
    represent,
    select_connecting_cell,
)
from graphbu.words import Word


@pytest.fixture(scope="module")
def y_data():
    og = order_graph(star_y())
    d2, ud2 = build_field(build_ordered(og)), build_field(build_unordered(og))
    return og, d2, ud2


def test_classify_y_examples(y_data):
    og, _, _ = y_data
    assert classify_cell(og, Cell(2, (1, 3), ordered=False)) == (Status.CRITICAL, None)
    assert classify_cell(og, Cell(2, 3)) == (Status.REDUNDANT, Cell((1, 2), 3))
    assert classify_cell(og, Cell((1, 2), 3))[0] is Status.COLLAPSIBLE
    assert classify_cell(og, Cell(0, 1, ordered=False))[0] is Status.CRITICAL
    with pytest.raises(ValueError):
        classify_cell(og, Cell(1, (1, 2)))


def test_y_census(y_data):
    _, d2, ud2 = y_data
    assert d2.census() == (2, 2, 0)
    assert set(d2.critical(1)) == {Cell(2, (1, 3)), Cell((1, 3), 2)}
    assert ud2.census() == (1, 1, 0)
    assert ud2.critical(1) == [Cell(2, (1, 3), ordered=False)]


def test_y_trees(y_data):
    og, d2, ud2 = y_data
    dt = build_trees(d2)
    assert dt.connecting == Cell(2, (1, 3)) == select_connecting_cell(og)
    assert len(dt.beta) == 12 and dt.beta[Cell(0, 1)] == ()
    assert dt.generators == [Cell((1, 3), 2)]
    udt = build_trees(ud2)
    assert len(udt.beta) == 6


def test_interval_rejected():
    field = build_field(build_ordered(order_graph(path_graph(4))))
    assert len(field.complex.components) == 2
    with pytest.raises(ValueError):
        build_trees(field)


def test_swap_stability_and_perfect_matching():
    for name, g in corpus(seed=5, n_random=6).items():
        field = build_field(build_ordered(order_graph(g)))
        crit = set(field.critical())
        assert {c.swap() for c in crit} == crit, name
        for c, p in field.partner.items():
            assert field.partner[p] == c


def test_round_trip_single_letter():
    for g in (complete(4), circle_with_chord(), star_y()):
        og = order_graph(g)
        for ordered in (True, False):
            field = build_field(build_ordered(og) if ordered else build_unordered(og))
            trees = build_trees(field)
            for c in trees.generators:
                assert normalize_loop(field, trees, represent(trees, c)) == Word.gen(c)


def test_tree_loops_are_trivial():
    og = order_graph(complete(4))
    field = build_field(build_unordered(og))
    trees = build_trees(field)
    rng = random.Random(2)
    for _ in range(20):
        # out along a tree edge path and back again
        target = rng.choice(list(trees.beta))
        path = list(trees.beta[target])
        loop = path + [(c, -s) for c, s in reversed(path)]
        assert normalize_loop(field, trees, loop) == Word()


def test_sigma_squared_on_circle_with_chord():
    og = order_graph(circle_with_chord())
    d2, ud2 = build_field(build_ordered(og)), build_field(build_unordered(og))
    dt, udt = build_trees(d2), build_trees(ud2)
    a, (b, c) = dt.connecting.first, dt.connecting.second
    # the generator ((b,c),a) of P_2 projects to a loop equal to sigma^2
    loop = project_path(represent(dt, Cell((b, c), a)))
    sigma = Word.gen(Cell(a, (b, c), ordered=False))
    assert normalize_loop(ud2, udt, loop) == sigma * sigma


def test_open_loop_rejected(y_data):
    _, _, ud2 = y_data
    trees = build_trees(ud2)
    with pytest.raises(ValueError):
        normalize_loop(ud2, trees, [(Cell(0, (1, 2), ordered=False), 1)])
