import math

import numpy as np
import pytest

from hypersparse.hypergraph import Hyperedge, Hypergraph, gen_random_hypergraph
from hypersparse.multigraph import MultiGraph
from hypersparse.recovery import (hypergraph_sparsify_spanner,
                                  recursive_recovery,
                                  repeated_recursive_recovery_spanner)
from hypersparse.resistance import effective_resistance_all_exact
from hypersparse.rng import substream
from hypersparse.spanner import (Spanner, SpannerBundle, bundle_size,
                                 bundle_try_insert, spanner_try_insert,
                                 stretch_for)
from hypersparse.vs_sparsifier import (SparsifyConfig, plan_rounds,
                                       sparsify_static, vs)


def _random_multigraph(n, m, seed):
    rng = substream(seed, "mg")
    us = rng.integers(0, n, size=m)
    vs_ = rng.integers(0, n, size=m)
    fix = us == vs_
    vs_[fix] = (vs_[fix] + 1) % n
    return MultiGraph.from_arrays(n, us, vs_, np.arange(m))


def test_spanner_accepts_then_rejects_duplicate():
    t = Spanner(6, 3)
    assert spanner_try_insert(t, 0, 1)
    assert not spanner_try_insert(t, 0, 1)
    assert not spanner_try_insert(t, 1, 0)


def test_spanner_accepts_beyond_threshold_path():
    t = Spanner(8, 3)
    # path 0-1-2-3-4 of length 4 > threshold 3, so (0, 4) is accepted
    for u in range(4):
        assert t.try_insert(u, u + 1)
    assert t.try_insert(0, 4)
    # but (0, 3) at distance 3 is rejected
    assert not t.try_insert(0, 3)


def test_spanner_girth_audit():
    t = Spanner(16, 4)
    rng = substream(17)
    for _ in range(200):
        u, v = rng.choice(16, size=2, replace=False)
        t.try_insert(int(u), int(v))
    assert not t.has_short_cycle()


def test_bundle_parallel_copies_fill_in_order():
    b = SpannerBundle(4, 3, 2)
    for k in range(3):
        kept, idx = bundle_try_insert(b, 0, 1)
        assert kept and idx == k
    kept, idx = bundle_try_insert(b, 0, 1)
    assert not kept and idx is None
    assert b.slot_spanners(0, 1) == [0, 1, 2]
    assert b.audit_disjoint()


def test_bundle_remove_and_occupancy():
    b = SpannerBundle(4, 2, 2)
    b.try_insert(0, 1)
    b.try_insert(0, 1)
    b.remove(0, 1, 0)
    assert b.slot_spanners(0, 1) == [1]
    assert b.audit_disjoint()
    with pytest.raises(KeyError):
        b.remove(0, 1, 0)


def test_claim_9_1_exact_zero_tolerance():
    # every edge with exact R >= stretch/ell is in the bundle, always
    total_high = 0
    for seed in range(6):
        n = 24 + 16 * seed
        g = _random_multigraph(n, 2 * n + 10 * seed, seed)
        # splice in pendant paths so some edges have resistance near 1
        extra = [(int(g.us[i]), int(g.vs[i]), int(g.labels[i]))
                 for i in range(g.num_edges)]
        base = g.num_edges
        for tail in range(3):
            prev = tail
            for hop in range(3):
                extra.append((prev, n - 1 - (3 * tail + hop),
                              base + 3 * tail + hop))
                prev = n - 1 - (3 * tail + hop)
        g = MultiGraph(n, extra)
        res = effective_resistance_all_exact(g).values
        t = stretch_for(n)
        for ell in (4, 8, 16):
            bundle = SpannerBundle(n, ell, t)
            in_bundle = np.zeros(g.num_edges, dtype=bool)
            for i in range(g.num_edges):
                kept, _ = bundle.try_insert(int(g.us[i]), int(g.vs[i]))
                in_bundle[i] = kept
            high = res >= t / ell
            total_high += int(high.sum())
            assert not np.any(high & ~in_bundle)
    assert total_high > 0


def test_spanner_size_bound():
    for seed in range(4):
        n = 60 + 40 * seed
        g = _random_multigraph(n, 6 * n, seed + 50)
        t = stretch_for(n)
        bundle = SpannerBundle(n, 3, t)
        for i in range(g.num_edges):
            bundle.try_insert(int(g.us[i]), int(g.vs[i]))
        bound = 3 * n ** (1 + 2 / t)
        for sp in bundle.spanners:
            assert sp.edge_count <= bound


def test_girth_invariant_under_bundle_churn():
    rng = substream(23)
    bundle = SpannerBundle(20, 3, stretch_for(20))
    present = []
    for step in range(400):
        if rng.random() < 0.65 or not present:
            u, v = rng.choice(20, size=2, replace=False)
            kept, idx = bundle.try_insert(int(u), int(v))
            if kept:
                present.append((int(u), int(v), idx))
        else:
            u, v, idx = present.pop(int(rng.integers(len(present))))
            bundle.remove(u, v, idx)
    for sp in bundle.spanners:
        assert not sp.has_short_cycle()
    assert bundle.audit_disjoint()


def test_recursive_recovery_single_edge():
    g = MultiGraph(3, [(0, 1, 0)])
    assert recursive_recovery(g, 2, 1, seed=0) == {0}


def test_recursive_recovery_parallel_capacity():
    ell, t = 3, 4
    g = MultiGraph(2, [(0, 1, i) for i in range(ell * t + 1)])
    per_level: list[set[int]] = []
    rec = recursive_recovery(g, ell, 1, seed=1, stretch=t,
                             per_level=per_level)
    assert len(rec) == ell
    assert per_level[0] == rec


def test_recursive_recovery_level_freezing():
    g = _random_multigraph(16, 120, seed=9)
    per_level: list[set[int]] = []
    recursive_recovery(g, 2, 6, seed=2, per_level=per_level)
    seen: set[int] = set()
    for level_set in per_level:
        assert not (level_set & seen)
        seen |= level_set


def test_recursive_recovery_hits_high_influence_sets():
    # smoke version of the recovery-probability contract: a clique whose
    # edges carry most of the resistance mass is hit almost always
    g = MultiGraph(8, [(i, i + 1, i) for i in range(7)])  # path: all R = 1
    q = set(range(7))
    hits = 0
    for trial in range(60):
        s = recursive_recovery(g, 2, 3, seed=trial)
        hits += bool(s & q)
    assert hits >= 58


def test_repeated_recovery_empty_and_single():
    cfg = SparsifyConfig(seed=5)
    assert repeated_recursive_recovery_spanner(
        Hypergraph(6, []), 2, 0.5, cfg, seed=1) == set()
    cfg1 = SparsifyConfig(seed=5, p_override=1.0)
    single = Hypergraph(6, [Hyperedge(3, (1, 4), 1.0)])
    assert repeated_recursive_recovery_spanner(
        single, 2, 0.5, cfg1, seed=2) == {3}


def test_repeated_recovery_covers_vs_high_frequency_edges():
    # paired Monte Carlo: hyperedges recovered by vs with frequency >= 0.9
    # must be recovered by the spanner path with frequency >= 0.9
    h = gen_random_hypergraph(14, 60, 3, 5, seed=12)
    cfg = SparsifyConfig(seed=0)
    trials = 30
    vs_hits = {eid: 0 for eid in h.edge_ids()}
    sp_hits = {eid: 0 for eid in h.edge_ids()}
    for trial in range(trials):
        plan = plan_rounds(14, 2, cfg, substream(trial, "vsplan"))
        for eid in vs(h, 1.0, plan, seed=trial):
            vs_hits[eid] += 1
        for eid in repeated_recursive_recovery_spanner(h, 2, 0.5, cfg,
                                                       seed=trial):
            sp_hits[eid] += 1
    for eid in h.edge_ids():
        if vs_hits[eid] >= 0.9 * trials:
            assert sp_hits[eid] >= 0.9 * trials


def test_spanner_sparsifier_outputs_power_of_two_weights():
    h = gen_random_hypergraph(18, 150, 3, 6, seed=13)
    out = hypergraph_sparsify_spanner(h, 0.5, SparsifyConfig(seed=3))
    assert out.size > 0
    for eid, w in out.kept:
        assert w == 2.0 ** int(math.log2(w))
    out_empty = hypergraph_sparsify_spanner(Hypergraph(4, []), 0.5,
                                            SparsifyConfig(seed=3))
    assert out_empty.kept == []


def test_bundle_size_formula():
    assert bundle_size(2, 0.5) >= 2
    assert bundle_size(1 << 20, 0.1, cap=64) == 64
    # threshold stretch/ell tightens as eps shrinks
    assert bundle_size(100, 0.2) > bundle_size(100, 0.5)
