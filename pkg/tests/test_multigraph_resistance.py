import math

import numpy as np
import pytest

from hypersparse.hypergraph import Hyperedge, Hypergraph, gen_random_hypergraph
from hypersparse.multigraph import MultiEdge, MultiGraph, clique_expand, \
    vertex_sample
from hypersparse.resistance import (CapacityError, connected_components,
                                    effective_resistance_all_approx,
                                    effective_resistance_all_exact,
                                    effective_resistance_exact, er_sample,
                                    er_sample_indices)
from hypersparse.rng import substream


def _random_multigraph(n, m, seed):
    rng = substream(seed, "mg")
    us = rng.integers(0, n, size=m)
    vs = rng.integers(0, n, size=m)
    fix = us == vs
    vs[fix] = (vs[fix] + 1) % n
    return MultiGraph.from_arrays(n, us, vs, np.arange(m))


def test_clique_expand_counts_and_labels():
    h = Hypergraph(6, [Hyperedge(0, (0, 1, 2)), Hyperedge(1, (0, 1)),
                       Hyperedge(2, (5,))])
    g = clique_expand(h)
    assert g.num_edges == 3 + 1 + 0
    slots = [(e.u, e.v, e.label) for e in g.edge_list()]
    assert (0, 1, 0) in slots and (0, 2, 0) in slots and (1, 2, 0) in slots
    assert (0, 1, 1) in slots
    # parallel copies of a slot come from distinct labels
    par = [e for e in g.edge_list() if (e.u, e.v) == (0, 1)]
    assert len(par) == 2 and {e.label for e in par} == {0, 1}


def test_clique_expand_total_count():
    h = gen_random_hypergraph(20, 50, 2, 7, seed=3)
    g = clique_expand(h)
    expected = sum(e.arity * (e.arity - 1) // 2 for e in h.edges())
    assert g.num_edges == expected


def test_exact_resistance_laws():
    single = MultiGraph(2, [(0, 1, 0)])
    assert abs(effective_resistance_exact(single, [(0, 1)])[0] - 1.0) < 1e-12
    path = MultiGraph(3, [(0, 1, 0), (1, 2, 1)])
    assert abs(effective_resistance_exact(path, [(0, 2)])[0] - 2.0) < 1e-12
    tri = MultiGraph(3, [(0, 1, 0), (1, 2, 1), (0, 2, 2)])
    assert abs(effective_resistance_exact(tri, [(0, 1)])[0] - 2 / 3) < 1e-12
    par = MultiGraph(2, [(0, 1, i) for i in range(4)])
    assert abs(effective_resistance_exact(par, [(0, 1)])[0] - 0.25) < 1e-12


def test_cross_component_is_infinite():
    g = MultiGraph(4, [(0, 1, 0), (2, 3, 1)])
    vals = effective_resistance_exact(g, [(0, 2), (0, 1)])
    assert vals[0] == math.inf
    assert abs(vals[1] - 1.0) < 1e-12


def test_capacity_error():
    g = MultiGraph(10, [(i, i + 1, i) for i in range(9)])
    with pytest.raises(CapacityError):
        effective_resistance_exact(g, [(0, 9)], vertex_limit=5)


def test_foster_identity_exact():
    for seed in range(15):
        n = 16 + 8 * seed
        g = _random_multigraph(n, 3 * n, seed)
        rep = effective_resistance_all_exact(g)
        c = len(set(rep.component.tolist()))
        assert abs(rep.foster_sum() - (n - c)) < 1e-6


def test_rayleigh_monotonicity_spot_check():
    rng = substream(99)
    for trial in range(10):
        g = _random_multigraph(12, 30, 1000 + trial)
        base = effective_resistance_all_exact(g).values
        edges = list(zip(g.us.tolist(), g.vs.tolist(), g.labels.tolist()))
        for _ in range(10):
            drop = int(rng.integers(0, len(edges)))
            kept = [e for i, e in enumerate(edges) if i != drop]
            g2 = MultiGraph(12, kept)
            comp2 = connected_components(g2)
            r2 = effective_resistance_all_exact(g2).values
            for i, (u, v, _) in enumerate(kept):
                j = edges.index((u, v, kept[i][2]))
                if comp2[u] == comp2[v]:
                    assert r2[i] >= base[j] - 1e-9


def test_approx_agrees_with_exact():
    h = gen_random_hypergraph(24, 60, 2, 5, seed=8)
    g = clique_expand(h)
    exact = effective_resistance_all_exact(g).values
    approx = effective_resistance_all_approx(g, delta=0.2, seed=4).values
    ratio = approx / exact
    assert ratio.max() <= 1.2 and ratio.min() >= 0.8
    # Foster within (1 +- delta)
    c = len(set(connected_components(g).tolist()))
    assert abs(approx.sum() - (g.n - c)) <= 0.2 * (g.n - c) + 1e-9


def test_approx_tree_bridges():
    g = MultiGraph(8, [(i, i + 1, i) for i in range(7)])
    approx = effective_resistance_all_approx(g, delta=0.15, seed=2).values
    assert np.all(np.abs(approx - 1.0) <= 0.15)


def test_k4_approx_and_exact():
    g = MultiGraph(4, [(a, b, 0) for a in range(4) for b in range(a + 1, 4)])
    exact = effective_resistance_all_exact(g).values
    assert np.allclose(exact, 0.5, atol=1e-12)
    approx = effective_resistance_all_approx(g, delta=0.2, seed=1).values
    assert np.all(np.abs(approx / exact - 1) <= 0.2)


def test_er_sample_trivial_branches():
    g = MultiGraph(4, [(a, b, 0) for a in range(4) for b in range(a + 1, 4)])
    assert er_sample(g, 0.0, substream(1)) == set()
    tree = MultiGraph(5, [(i, i + 1, i) for i in range(4)])
    kept = er_sample(tree, 1.0, substream(2))
    assert len(kept) == 4
    assert all(isinstance(e, MultiEdge) for e in kept)


def test_er_sample_infinite_resistance_always_kept():
    g = MultiGraph(4, [(0, 1, 0), (2, 3, 1)])
    forced = np.array([math.inf, 1e-9])
    for seed in range(20):
        kept = set(er_sample_indices(g, 0.5, substream(seed),
                                     resistances=forced).tolist())
        assert 0 in kept


def test_er_sample_probability_one_branch_is_exact():
    g = _random_multigraph(10, 25, seed=5)
    res = effective_resistance_all_exact(g).values
    lam = 1.0 / res.min() + 1.0
    for seed in range(10):
        assert len(er_sample_indices(g, lam, substream(seed))) == g.num_edges


def test_er_sample_expected_count_on_clique():
    # oracle: adjacent resistance in K_n is 2/n exactly
    n = 10
    g = MultiGraph(n, [(a, b, 0) for a in range(n) for b in range(a + 1, n)])
    exact = effective_resistance_all_exact(g).values
    assert np.allclose(exact, 2.0 / n, atol=1e-10)
    lam = 2.0
    p = min(1.0, lam * 2.0 / n)
    trials = 10_000
    rng = substream(31)
    total = sum(len(er_sample_indices(g, lam, rng, resistances=exact))
                for _ in range(trials))
    mean = total / trials
    expect = g.num_edges * p
    sigma = math.sqrt(g.num_edges * p * (1 - p) / trials)
    assert abs(mean - expect) <= 3 * sigma


def test_vertex_sample_extremes():
    h = gen_random_hypergraph(20, 40, 3, 6, seed=4)
    kept, proj = vertex_sample(h, 1.0, substream(1))
    assert len(kept) == 20 and proj.num_edges == 40
    for e in proj.edges():
        assert e.vertices == h.edge(e.id).vertices
    kept0, proj0 = vertex_sample(h, 0.0, substream(1))
    assert len(kept0) == 0 and proj0.num_edges == 0
    with pytest.raises(ValueError):
        vertex_sample(h, 1.5, substream(1))


def test_vertex_sample_projected_arity_mean():
    # oracle: each vertex kept independently with rate p, so projected
    # arity of an arity-r edge has mean p*r
    h = Hypergraph(40, [Hyperedge(0, tuple(range(8)), 1.0)])
    p = 0.25
    total = 0
    trials = 10_000
    for t in range(trials):
        _, proj = vertex_sample(h, p, substream(t, "va"))
        total += proj.edge(0).arity if proj.num_edges else 0
    mean = total / trials
    sigma = math.sqrt(8 * p * (1 - p) / trials)
    assert abs(mean - 8 * p) <= 3 * sigma
