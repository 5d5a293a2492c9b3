import pickle

import numpy as np
import pytest

from sqenergy import graph as gr
from sqenergy.canon import are_isomorphic


def test_complete():
    assert gr.make_complete(1).m == 0 and gr.make_complete(1).n == 1
    k4 = gr.make_complete(4)
    assert k4.m == 6 and gr.is_regular(k4) == 3
    assert gr.make_complete(9).m == 36


def test_complete_bipartite():
    star = gr.make_complete_bipartite(1, 3)
    assert star.m == 3 and are_isomorphic(star, gr.make_star(4))
    assert gr.make_complete_bipartite(50, 50).m == 2500
    assert are_isomorphic(gr.make_complete_bipartite(2, 2), gr.make_cycle(4))


def test_cycle_path_star():
    c5 = gr.make_cycle(5)
    assert c5.m == 5 and gr.is_regular(c5) == 2
    assert gr.make_path(3).m == 2
    assert gr.degree_sequence(gr.make_star(4)) == [3, 1, 1, 1]


def test_kneser():
    pet = gr.make_kneser(5, 2)
    assert (pet.n, pet.m, gr.is_regular(pet)) == (10, 15, 3)
    k62 = gr.make_kneser(6, 2)
    assert (k62.n, k62.m) == (15, 45)
    k42 = gr.make_kneser(4, 2)
    assert k42.m == 3 and len(gr.components(k42)) == 3
    assert not gr.is_connected(k42)


def test_blowup():
    assert are_isomorphic(gr.blowup(gr.make_complete(2), 2), gr.make_cycle(4))
    g = gr.make_path(4)
    assert gr.blowup(g, 1) == g
    b = gr.blowup(gr.make_cycle(5), 3)
    assert (b.n, b.m) == (15, 45)


def test_disjoint_union():
    g = gr.disjoint_union(gr.make_complete(3), gr.make_complete(1))
    assert (g.n, g.m) == (4, 3)
    two_k4 = gr.disjoint_copies(gr.make_complete(4), 2)
    assert (two_k4.n, two_k4.m) == (8, 12)
    assert are_isomorphic(gr.disjoint_union(gr.make_path(2), gr.make_path(2)),
                          gr.disjoint_copies(gr.make_complete(2), 2))


def test_structure_queries():
    assert not gr.is_connected(gr.disjoint_copies(gr.make_complete(2), 2))
    assert gr.is_regular(gr.make_star(4)) is None
    assert gr.is_bipartite(gr.make_cycle(6)) and not gr.is_bipartite(gr.make_cycle(5))
    assert gr.is_complete(gr.make_complete(5))
    with pytest.raises(ValueError):
        gr.is_connected(gr.make_empty(0))


def test_complement_and_relabel():
    c5 = gr.make_cycle(5)
    assert are_isomorphic(gr.complement(c5), c5)
    h = gr.relabel(c5, [4, 2, 0, 3, 1])
    assert h.m == 5 and are_isomorphic(h, c5)


def test_invalid_adjacency_rejected():
    with pytest.raises(ValueError):
        gr.Graph.from_adjacency(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        gr.Graph.from_adjacency(np.array([[1, 0], [0, 0]]))


def test_immutable_hashable_picklable():
    g = gr.make_cycle(5)
    with pytest.raises(ValueError):
        g.adjacency[0, 1] = 0
    assert hash(g) == hash(gr.make_cycle(5))
    assert pickle.loads(pickle.dumps(g)) == g
    assert g.has_edge(0, 1) and not g.has_edge(0, 2)
    assert sorted(g.neighbors(0)) == [1, 4]
