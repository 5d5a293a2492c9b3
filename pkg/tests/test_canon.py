import itertools

import numpy as np
import pytest

from sqenergy import graph as gr
from sqenergy.canon import (_canon_dfs, _canon_numpy, are_isomorphic, canonical_form, canonical_graph,
                            canonical_labelling, enumerate_bruteforce, enumerate_nonisomorphic, graph_from_code)
from sqenergy.random_graphs import sample_gnp

COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}


@pytest.mark.parametrize("n,count", COUNTS.items())
def test_enumeration_counts(n, count):
    assert sum(1 for _ in enumerate_nonisomorphic(n)) == count


@pytest.mark.parametrize("n", range(1, 6))
def test_enumeration_matches_bruteforce(n):
    aug = [canonical_form(g) for g in enumerate_nonisomorphic(n)]
    brute = [canonical_form(g) for g in enumerate_bruteforce(n)]
    assert aug == brute


def test_enumeration_numpy_path_agrees():
    a = [canonical_form(g) for g in enumerate_nonisomorphic(5, use_numba=False)]
    b = [canonical_form(g) for g in enumerate_nonisomorphic(5, use_numba=True)]
    assert a == b


def test_enumeration_pairwise_nonisomorphic_by_invariants():
    seen = set()
    for g in enumerate_nonisomorphic(6):
        code = canonical_form(g)
        assert code not in seen
        seen.add(code)


def test_forms():
    k3 = gr.make_complete(3)
    for perm in itertools.permutations(range(3)):
        assert canonical_form(gr.relabel(k3, perm)) == canonical_form(k3)
    assert canonical_form(gr.make_path(3)) != canonical_form(k3)
    c5 = gr.make_cycle(5)
    assert canonical_form(c5) == canonical_form(gr.complement(c5))


def _brute_min_code(adj):
    n = adj.shape[0]
    v, u = np.tril_indices(n, -1)
    best = None
    for perm in itertools.permutations(range(n)):
        p = np.array(perm)
        bits = adj[p[u], p[v]]
        code = int("".join(map(str, bits)) or "0", 2)
        best = code if best is None or code < best else best
    return best


@pytest.mark.parametrize("seed", range(25))
def test_dfs_numpy_and_bruteforce_agree(seed):
    g = sample_gnp(6, 0.45, seed)
    adj = np.ascontiguousarray(g.adjacency)
    c1, order1, last1 = _canon_dfs(adj)
    c2, order2, last2 = _canon_numpy(adj)
    assert int(c1) == int(c2) == _brute_min_code(adj)
    assert np.array_equal(np.asarray(last1, bool), np.asarray(last2, bool))
    assert graph_from_code(6, int(c1)) == gr.relabel(g, np.asarray(order1)) or \
        are_isomorphic(graph_from_code(6, int(c1)), g)


@pytest.mark.parametrize("seed", range(10))
def test_relabel_invariance(seed):
    g = sample_gnp(9, 0.5, seed)
    perm = np.random.default_rng(seed).permutation(9)
    assert canonical_graph(gr.relabel(g, perm)) == canonical_graph(g)


def test_limits():
    with pytest.raises(ValueError):
        canonical_labelling(gr.make_empty(11))
    with pytest.raises(ValueError):
        next(enumerate_nonisomorphic(8))
