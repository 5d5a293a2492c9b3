import numpy as np
import pytest

from sqenergy import graph as gr
from sqenergy.canon import are_isomorphic
from sqenergy.graph6 import encode_graph6
from sqenergy.random_graphs import derive_seed, generate_maximal_planar, sample_gnp


def test_gnp_extremes():
    assert sample_gnp(10, 0.0, 1).m == 0
    assert sample_gnp(10, 1.0, 1) == gr.make_complete(10)


def test_gnp_deterministic():
    assert encode_graph6(sample_gnp(40, 0.3, 99)) == encode_graph6(sample_gnp(40, 0.3, 99))
    assert sample_gnp(40, 0.3, 99) != sample_gnp(40, 0.3, 100)


def test_gnp_density():
    ms = [sample_gnp(60, 0.3, s).m for s in range(20)]
    assert abs(np.mean(ms) / (60 * 59 / 2) - 0.3) < 0.02


def test_gnp_rejects_bad_p():
    with pytest.raises(ValueError):
        sample_gnp(5, 1.5, 0)


def test_derive_seed():
    assert derive_seed(7, 0, 0.5) == derive_seed(7, 0, 0.5)
    seeds = {derive_seed(7, i, p) for i in range(10) for p in (0.1, 0.2, 0.3)}
    assert len(seeds) == 30
    assert 0 <= derive_seed(2 ** 64 - 1, 5, 0.9) < 2 ** 64


def _euler_ok(g):
    return g.m == 3 * (g.n - 2)


def test_planar_small_cases():
    assert generate_maximal_planar(3, 0) == gr.make_complete(3)
    for seed in range(5):
        assert are_isomorphic(generate_maximal_planar(4, seed, flips=10), gr.make_complete(4))
    assert generate_maximal_planar(20, 3).m == 54


@pytest.mark.parametrize("seed", range(15))
def test_planar_structure(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(5, 40))
    g = generate_maximal_planar(n, seed, flips=3 * n)
    assert _euler_ok(g)
    assert gr.is_connected(g)
    assert g.degrees().min() >= 3
    assert generate_maximal_planar(n, seed, flips=3 * n) == g


def test_planar_flips_change_graph():
    base = generate_maximal_planar(30, 1, flips=0)
    flipped = generate_maximal_planar(30, 1, flips=200)
    assert base.m == flipped.m and base != flipped


def test_gnp_edge_concentration():
    ms = np.array([sample_gnp(100, 0.5, s).m for s in range(1000)])
    assert np.mean((ms >= 2200) & (ms <= 2750)) >= 0.99
