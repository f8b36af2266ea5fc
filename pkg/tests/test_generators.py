from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ilpitp.generators import WSParams, bidirected_count, orient, small_world, watts_strogatz
from ilpitp.graph import DIRECTED, UNDIRECTED, GraphError, build


def test_p_zero_is_the_ring_lattice():
    g = watts_strogatz(12, 4, 0.0)
    assert g.n_edges == 24
    assert set(g.out_degree.tolist()) == {4}
    assert set(g.successors(0)) == {1, 2, 10, 11}


def test_full_rewiring_keeps_edge_count_and_simplicity():
    g = watts_strogatz(100, 4, 1.0, rng_seed=3)
    assert g.kind == UNDIRECTED and g.n_edges == 200
    assert g.loops_dropped == 0 and g.duplicates_collapsed == 0


@pytest.mark.parametrize("n,k", [(10, 3), (10, 10), (10, 12), (5, -2)])
def test_bad_parameters(n, k):
    with pytest.raises(ValueError):
        watts_strogatz(n, k, 0.3)


@pytest.mark.parametrize("p", [-0.1, 1.5])
def test_bad_probability(p):
    with pytest.raises(ValueError):
        watts_strogatz(10, 2, p)


def test_reproducible_and_seed_sensitive():
    a = watts_strogatz(300, 10, 0.3, rng_seed=11)
    b = watts_strogatz(300, 10, 0.3, rng_seed=11)
    c = watts_strogatz(300, 10, 0.3, rng_seed=12)
    assert a.arcs() == b.arcs()
    assert a.arcs() != c.arcs()


def test_bidirected_count_rounds_half_up():
    assert bidirected_count(50_000, 0.33) == 16_500
    assert bidirected_count(50_000, 0.66) == 33_000
    assert bidirected_count(3, 0.5) == 2
    assert bidirected_count(10, 0.0) == 0


def test_orient_identity_at_one():
    g = watts_strogatz(50, 4, 0.3)
    assert orient(g, 1.0) is g


def test_orient_requires_undirected():
    with pytest.raises(GraphError):
        orient(build(2, [(0, 1)]), 0.5)


def test_orient_zero_gives_one_arc_per_edge():
    g = watts_strogatz(60, 6, 0.3, rng_seed=1)
    h = orient(g, 0.0, rng_seed=2)
    assert h.kind == DIRECTED and h.n_arcs == g.n_edges
    und = {(min(i, j), max(i, j)) for i, j in h.arcs()}
    assert und == set(g.edges())


def test_ws_params_name():
    assert WSParams(100, 10, o=0.66).name == "WS-10-66"
    with pytest.raises(ValueError):
        WSParams(100, 10, o=1.2)


@given(st.integers(8, 80), st.sampled_from([2, 4, 6]), st.floats(0, 1), st.floats(0, 1),
       st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_orientation_arc_formula(n, k, p, o, seed):
    if k >= n:
        return
    g = watts_strogatz(n, k, p, seed)
    assert g.n_edges == n * k // 2
    h = small_world(WSParams(n, k, p, o, seed))
    m = g.n_edges
    b = bidirected_count(m, o)
    assert h.n_arcs == 2 * b + (m - b)
    arcs = h.arc_array()
    assert np.all(arcs[:, 0] != arcs[:, 1])
    keys = arcs[:, 0] * n + arcs[:, 1]
    assert np.unique(keys).size == keys.size
    assert {(min(i, j), max(i, j)) for i, j in h.arcs()} == set(g.edges())
    assert small_world(WSParams(n, k, p, o, seed)).arcs() == h.arcs()
