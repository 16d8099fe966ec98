import itertools
import random

import pytest

from graphbu.braid import Braids
from graphbu.bu_engine import (
    VerificationError,
    build_key_elements,
    circle_failures_by_search,
    classify_circle,
    classify_interval,
    classify_tree,
    construct_witness,
    decide,
    homeomorphism_type,
    key_identities,
    t_to_z,
    z_to_t,
)
from graphbu.config_complex import Cell
from graphbu.corpus import (
    antipodal_cycle,
    circle_with_chord,
    complete,
    cycle,
    multi_edge_involution,
    path_graph,
    star_y,
    theta_graph,
)
from graphbu.graph_model import Graph, GraphError, order_graph
from graphbu.involution import adapt_basis, quotient
from graphbu.words import Word, random_word


def test_homeomorphism_types():
    assert homeomorphism_type(Graph.from_adjacency({0: []})) == "point"
    assert homeomorphism_type(path_graph(5)) == "interval"
    assert homeomorphism_type(cycle(5)) == "circle"
    assert homeomorphism_type(star_y()) == "tree"
    assert homeomorphism_type(complete(4)) == "general"


def test_circle_classifier_examples():
    assert not classify_circle((3,), 0).holds
    assert classify_circle((3,), 0).witness.psi["c"] == 3
    assert classify_circle((4,), 0).holds
    assert classify_circle((3, 2, 5), 1).holds
    assert not classify_circle((3, 2, 2), 1).holds
    with pytest.raises(ValueError):
        classify_circle((3, 2), 1)


def test_circle_search_small():
    words = {"a": Word.gen("c", 2)}
    assert circle_failures_by_search(words, 0, 3) == {(-3,), (-1,), (1,), (3,)}


def test_interval_always_holds():
    assert classify_interval().holds
    ig = quotient(*antipodal_cycle(2))
    assert decide(ig, path_graph(3), ["1"]).holds


def test_tree_fails_with_sigma():
    b = Braids(order_graph(star_y()))
    d = classify_tree(b, 1)
    assert not d.holds and d.witness.verified
    assert d.witness.psi["c"] == Word.gen(Cell(2, (1, 3), ordered=False))
    ig = quotient(*antipodal_cycle(2))
    d = decide(ig, star_y(), ["1"])
    assert d.case == "tree" and d.witness.psi["c"] == Word.gen(b.sigma)
    with pytest.raises(ValueError):
        decide(ig, star_y(), ["z1"])


def test_key_elements_linear_chord():
    key = build_key_elements(Braids(order_graph(circle_with_chord())))
    assert key.branch == "linear"
    b = key.braids
    assert b.p1(Word.gen(key.rho)) == Word.gen("z1")
    assert all(ok for _, ok, _ in key_identities(key))


def test_key_elements_essential_theta():
    key = build_key_elements(Braids(order_graph(theta_graph())))
    assert key.branch == "essential"
    assert key.braids.p1(Word.gen(key.rho)) == Word()
    assert all(ok for _, ok, _ in key_identities(key))


def test_key_elements_x1_prime_rule():
    # K4 with a spanning path: first deleted edge starts at 0
    key = build_key_elements(Braids(order_graph(complete(4))))
    x1, y1 = key.braids.og.deleted_edges[0]
    assert x1 == 0 and key.x1_prime == y1 + 1
    assert key.lambdas[0] == Cell(y1 + 1, (x1, y1))


def test_key_elements_need_ancestral_deleted_edges():
    # a non-depth-first tree: the deleted edge (3,5) joins two cousins
    g = Graph.from_adjacency({0: [1], 1: [0, 2, 5], 2: [1, 3], 3: [2, 4, 5], 4: [3], 5: [1, 3]})
    og = order_graph(g, root=0, tree=[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5)])
    assert og.deleted_edges == ((3, 5),)
    with pytest.raises(GraphError, match="ancestor"):
        build_key_elements(Braids(og))
    # the depth-first tree of the same graph works
    assert build_key_elements(Braids(order_graph(g, root=0))).branch == "essential"


def test_t_alphabet_round_trip():
    rng = random.Random(0)
    for _ in range(50):
        w = random_word(rng, ["z1", "z2", "z3"], 8)
        assert t_to_z(z_to_t(w)) == w


def test_trivial_class_witnesses():
    for g in (theta_graph(), circle_with_chord()):
        key = build_key_elements(Braids(order_graph(g)))
        w = construct_witness([Word()], key, m=0)
        assert w.verified
        if key.branch == "essential":
            assert w.psi["c"] == Word.gen(key.sigma)
            assert w.phi["a"] == Word.gen(key.rho)
        assert key.braids.p1(w.phi["a"]) == Word()


def test_witness_rejects_foreign_alphabet():
    key = build_key_elements(Braids(order_graph(circle_with_chord())))
    with pytest.raises(ValueError):
        construct_witness([Word.gen("z7")], key, m=0)


@pytest.mark.parametrize("k", [2, 4, 6])
def test_decide_general_uses_adapted_basis(k):
    ig = quotient(*multi_edge_involution(k))
    m = ig.m
    rng = random.Random(k)
    alpha = [random_word(rng, ["z1", "z2", "z3"], 5) for _ in range(2 * m + 1)]
    d = decide(ig, complete(4), alpha)
    assert not d.holds and d.witness.verified
    basis = adapt_basis(ig)
    # check the diagram against the adapted basis words a = c^2, a_i, a'_i
    b = Braids(order_graph(complete(4)))
    for name, word in basis.gamma_words.items():
        image = word.substitute(d.witness.psi)
        assert b.iota(d.witness.phi[name]) == image


def test_decide_circle_dispatch():
    ig = quotient(*antipodal_cycle(2))
    assert not decide(ig, cycle(4), ["z1^3"]).holds
    assert decide(ig, cycle(4), ["2"]).holds
    with pytest.raises(ValueError):
        decide(ig, cycle(4), ["3", "1"])


def test_circle_classifier_against_search_m1():
    ig = quotient(*multi_edge_involution(4))
    basis = adapt_basis(ig)
    found = circle_failures_by_search(basis.gamma_words, 1, 7)
    for alpha in itertools.product(range(-3, 4), repeat=3):
        assert (not classify_circle(alpha, 1).holds) == (alpha in found)


def test_verification_error_is_internal():
    assert issubclass(VerificationError, RuntimeError)
