"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines as they complete. Tolerances and instance shapes are pinned here;
several criteria are statistical with explicit seed allowances.
"""

import math
import time

import numpy as np

from hypersparse.dynamic import DynamicConfig, DynamicOp, DynamicState
from hypersparse.hypergraph import (Hyperedge, Hypergraph,
                                    gen_online_lower_bound,
                                    gen_random_hypergraph)
from hypersparse.multigraph import MultiGraph
from hypersparse.online import OnlineConfig, OnlineState, online_finalize, \
    online_insert
from hypersparse.recovery import hypergraph_sparsify_spanner, \
    recursive_recovery
from hypersparse.resistance import effective_resistance_all_exact, \
    er_sample_indices
from hypersparse.rng import substream
from hypersparse.sketch import (HeavyHitterSketch, HypergraphSketch,
                                naive_sketch, sketch_construct,
                                sketch_recover)
from hypersparse.spanner import SpannerBundle, stretch_for
from hypersparse.verify import max_relative_error, verify_spectral
from hypersparse.vs_sparsifier import SparsifyConfig, sparsify_static


def _line(num: int, ok: bool, detail: str) -> None:
    print(f"criterion {num:02d} {'PASS' if ok else 'FAIL'}  {detail}")


def _random_multigraph(n, m, seed):
    rng = substream(seed, "amg")
    us = rng.integers(0, n, size=m)
    vs = rng.integers(0, n, size=m)
    fix = us == vs
    vs[fix] = (vs[fix] + 1) % n
    return MultiGraph.from_arrays(n, us, vs, np.arange(m))


def test_criterion_01_exhaustive_cut_fidelity_static():
    eps, n, m = 0.5, 12, 300
    results = {}
    for engine in ("vs", "spanner"):
        passed = 0
        slowest = 0.0
        for seed in range(10):
            h = gen_random_hypergraph(n, m, 3, 6, seed=200 + seed)
            cfg = SparsifyConfig(seed=seed)
            t0 = time.perf_counter()
            if engine == "vs":
                out = sparsify_static(h, eps, cfg)
            else:
                out = hypergraph_sparsify_spanner(h, eps, cfg)
            elapsed = time.perf_counter() - t0
            slowest = max(slowest, elapsed)
            rep = verify_spectral(h, out.to_hypergraph(h), eps, trials=0,
                                  seed=99, exhaustive=True)
            assert "exhaustive-cuts" in rep.details
            passed += rep.max_rel_error <= eps
        results[engine] = (passed, slowest)
    ok = all(p >= 9 and s <= 30.0 for p, s in results.values())
    _line(1, ok, f"vs={results['vs']}, spanner={results['spanner']} "
          f"(need >= 9/10 seeds, <= 30 s/seed)")
    assert results["vs"][0] >= 9 and results["spanner"][0] >= 9
    assert results["vs"][1] <= 30.0 and results["spanner"][1] <= 30.0


def test_criterion_02_spectral_battery_static():
    eps, n, m = 0.4, 60, 3000
    passed = 0
    sizes = []
    slowest = 0.0
    for seed in range(10):
        h = gen_random_hypergraph(n, m, 4, 8, seed=100 + seed)
        t0 = time.perf_counter()
        out = sparsify_static(h, eps, SparsifyConfig(seed=seed))
        rep = verify_spectral(h, out.to_hypergraph(h), eps, trials=200,
                              seed=99, exhaustive=False)
        slowest = max(slowest, time.perf_counter() - t0)
        sizes.append(out.size)
        passed += rep.max_rel_error <= eps and out.size <= m / 3
    ok = passed >= 9 and slowest <= 120.0
    _line(2, ok, f"passed={passed}/10 sizes={min(sizes)}..{max(sizes)} "
          f"(gate {m // 3}) slowest={slowest:.1f}s")
    assert passed >= 9
    assert slowest <= 120.0


def test_criterion_03_er_sampling_ordinary_graphs():
    n, p_edge, eps = 64, 0.3, 0.3
    lam = 8 * math.log(n) / (eps * eps)
    passed = 0
    for seed in range(10):
        rng = substream(1000 + seed, "er3")
        us, vs = [], []
        for a in range(n):
            for b in range(a + 1, n):
                if rng.random() < p_edge:
                    us.append(a)
                    vs.append(b)
        g = MultiGraph.from_arrays(n, np.asarray(us), np.asarray(vs),
                                   np.arange(len(us)))
        res = effective_resistance_all_exact(g).values
        idx = er_sample_indices(g, lam, substream(2000 + seed),
                                resistances=res)
        probs = np.minimum(1.0, lam * res)
        h_full = Hypergraph(n, [Hyperedge(i, (int(g.us[i]), int(g.vs[i])))
                                for i in range(g.num_edges)])
        h_samp = Hypergraph(n, [Hyperedge(int(i),
                                          (int(g.us[i]), int(g.vs[i])),
                                          float(1.0 / probs[i]))
                                for i in idx])
        gaussians = substream(3000 + seed).standard_normal((100, n))
        err = max_relative_error(h_full, h_samp, gaussians)
        passed += err <= eps
    ok = passed >= 9
    _line(3, ok, f"passed={passed}/10 at lambda=8 ln n/eps^2")
    assert passed >= 9


def test_criterion_04_claim_9_1_exact_deterministic():
    violations = 0
    high_total = 0
    for idx in range(50):
        rng = substream(4000 + idx, "c4")
        n = int(rng.integers(16, 257))
        m = int(rng.integers(n, min(5000, 8 * n)))
        g = _random_multigraph(n, m, 4100 + idx)
        res = effective_resistance_all_exact(g).values
        t = stretch_for(n)
        ell = int(rng.choice([4, 8, 16]))
        bundle = SpannerBundle(n, ell, t)
        in_bundle = np.zeros(g.num_edges, dtype=bool)
        for i in range(g.num_edges):
            kept, _ = bundle.try_insert(int(g.us[i]), int(g.vs[i]))
            in_bundle[i] = kept
        high = res >= t / ell
        high_total += int(high.sum())
        violations += int(np.sum(high & ~in_bundle))
    ok = violations == 0 and high_total > 0
    _line(4, ok, f"violations={violations} over {high_total} "
          "high-resistance edges in 50 multigraphs (zero tolerance)")
    assert violations == 0
    assert high_total > 0


def test_criterion_05_claim_8_1_recovery_probability():
    eps = 0.5
    trials = 1000
    worst_slack = 1.0
    results = []
    for idx in range(20):
        rng = substream(5000 + idx, "c5")
        if idx < 14:
            n = int(rng.integers(16, 33))
            m = int(rng.integers(3 * n, 8 * n))
            g = _random_multigraph(n, m, 5100 + idx)
        else:
            # parallel-heavy instances: saturated bundles, partial recovery
            n = int(rng.integers(8, 13))
            kappa = int(rng.integers(40, 120))
            edges = []
            eid = 0
            for a in range(n - 1):
                for _ in range(kappa):
                    edges.append((a, a + 1, eid))
                    eid += 1
            g = MultiGraph(n, edges)
        res = effective_resistance_all_exact(g).values
        qsize = int(rng.integers(1, 9))
        q = set(int(x) for x in rng.choice(g.num_edges, size=qsize,
                                           replace=False))
        sum_r = float(sum(res[i] for i in q))
        bound = min(2.0 / 3.0, sum_r / (eps * eps)) - 0.07
        t = stretch_for(g.n)
        levels = max(1, math.ceil(math.log2(max(g.num_edges, 2))))
        hits = 0
        for trial in range(trials):
            s = recursive_recovery(g, 4 * t, levels,
                                   seed=trial * 7919 + idx)
            hits += bool(s & q)
        freq = hits / trials
        worst_slack = min(worst_slack, freq - bound)
        results.append((sum_r, bound, freq))
    ok = worst_slack >= 0.0
    _line(5, ok, f"20 instances, worst slack {worst_slack:+.3f} "
          "(freq - bound must be >= 0)")
    assert worst_slack >= 0.0, results


def test_criterion_06_foster_identity():
    worst = 0.0
    for idx in range(100):
        rng = substream(6000 + idx, "c6")
        n = int(rng.integers(8, 513))
        m = int(rng.integers(max(2, n // 2), 3 * n))
        g = _random_multigraph(n, m, 6100 + idx)
        rep = effective_resistance_all_exact(g)
        c = len(set(rep.component.tolist()))
        worst = max(worst, abs(rep.foster_sum() - (n - c)))
    ok = worst <= 1e-6
    _line(6, ok, f"max |sum R - (n - c)| = {worst:.2e} over 100 multigraphs")
    assert worst <= 1e-6


def test_criterion_07_online_invariants():
    # 7a: prefix-replay irrevocability over 100 random streams, exact
    replay_ok = True
    for idx in range(100):
        rng = substream(7000 + idx, "c7a")
        n = int(rng.integers(8, 25))
        m = int(rng.integers(10, 60))
        edges = list(gen_random_hypergraph(n, m, 2, min(6, n),
                                           seed=7100 + idx).edges())
        cfg = OnlineConfig(n=n, m_max=m, eps=0.5, seed=idx)
        full = OnlineState(cfg)
        decisions = [online_insert(full, e) for e in edges]
        for _, w in full.kept:
            assert w == 2.0 ** round(math.log2(w))
        cut = int(rng.integers(1, m + 1))
        replay = OnlineState(cfg)
        redo = [online_insert(replay, e) for e in edges[:cut]]
        for a, b in zip(decisions[:cut], redo):
            if (a.edge_id, a.kept, a.weight, a.level) != \
                    (b.edge_id, b.kept, b.weight, b.level):
                replay_ok = False

    # 7b: lower-bound stress, n=40, k=3: >= n/2 new keeps per round
    nverts, ops = gen_online_lower_bound(40, 3, seed=5)
    cfg = OnlineConfig(n=nverts, m_max=len(ops), eps=0.5, seed=9)
    state = OnlineState(cfg)
    per_round = []
    kept_before = 0
    i = 0
    for rnd in range(3):
        for _ in range(40 * 2 ** rnd):
            online_insert(state, ops[i].edge)
            i += 1
        per_round.append(len(state.kept) - kept_before)
        kept_before = len(state.kept)
    stress_ok = all(x >= 20 for x in per_round)

    # 7c: uniform streams, retention and checkpoint battery
    n, m, eps = 100, 20000, 0.5
    batt_passed = 0
    retention_ok = True
    for seed in range(10):
        h = gen_random_hypergraph(n, m, 4, 8, seed=400 + seed)
        st = OnlineState(OnlineConfig(n=n, m_max=m, eps=eps, seed=seed))
        worst = 0.0
        count = 0
        checkpoints = {4000, 8000, 12000, 16000, 20000}
        for e in h.edges():
            online_insert(st, e)
            count += 1
            if count in checkpoints:
                out = online_finalize(st)
                prefix = Hypergraph(n, (h.edge(i) for i in range(count)))
                rep = verify_spectral(prefix, out.to_hypergraph(h), eps,
                                      trials=100, seed=77, exhaustive=False)
                worst = max(worst, rep.max_rel_error)
        out = online_finalize(st)
        retention_ok &= out.size <= m / 4
        batt_passed += worst <= eps
    ok = replay_ok and stress_ok and retention_ok and batt_passed >= 8
    _line(7, ok, f"replay_exact={replay_ok} lower_bound_rounds={per_round} "
          f"retention<=m/4={retention_ok} battery={batt_passed}/10")
    assert replay_ok
    assert stress_ok, per_round
    assert retention_ok
    assert batt_passed >= 8


def _run_dynamic_seed(seed: int, n: int, n_ins: int, n_del: int,
                      capacity: int, with_battery: bool):
    h = gen_random_hypergraph(n, n_ins, 3, 6, seed=500 + seed)
    cfg = DynamicConfig(n=n, m_capacity=capacity, eps=0.5, seed=seed)
    st = DynamicState(cfg)
    rng = substream(600 + seed)
    live = {}
    edges = list(h.edges())
    ins_i = dels = step = 0
    worst = 0.0
    sizes_ok = True
    lazy_ok = True
    epochs = {}        # instance slot -> (rebuild count, recovered set)
    touched = 0
    total = n_ins + n_del
    checkpoint_every = max(1, total // 5)
    while step < total:
        can_del = len(live) > 0 and dels < n_del
        do_del = can_del and (ins_i >= n_ins
                              or rng.random() < n_del / total)
        before_by_slot = {
            j: (st.rebuild_count[j], set(st.instances[j].recovered_map())
                if st.instances[j] else set())
            for j in range(1, st.k + 1)}
        if do_del:
            victim = int(rng.choice(sorted(live)))
            st.update(DynamicOp(delete_id=victim))
            del live[victim]
            dels += 1
            deleted = victim
        else:
            e = edges[ins_i]
            st.update(DynamicOp(insert=e))
            live[e.id] = e
            ins_i += 1
            deleted = None
        step += 1
        touched += sum(inst.touched_slots for inst in st.instances
                       if inst is not None)
        for inst in st.instances:
            if inst is not None:
                inst.touched_slots = 0
        for j in range(1, st.k + 1):
            if len(st.edge_sets[j]) > 2 ** j:
                sizes_ok = False
            rc_before, rec_before = before_by_slot[j]
            if st.rebuild_count[j] == rc_before and st.instances[j] is not None:
                rec_now = set(st.instances[j].recovered_map())
                lost = rec_before - rec_now - {deleted}
                if lost:
                    lazy_ok = False
        if with_battery and step % checkpoint_every == 0:
            cur = Hypergraph(n, live.values())
            rep = verify_spectral(cur, cur.reweighted(dict(st.mirror)), 0.5,
                                  trials=100, seed=777, exhaustive=False)
            worst = max(worst, rep.max_rel_error)
    rebuild_ok = all(
        st.rebuild_count[j] == (n_ins >> j) + (1 if n_ins % (2 ** j) >=
                                               2 ** (j - 1) else 0)
        for j in range(1, 3))
    return {"sizes_ok": sizes_ok, "lazy_ok": lazy_ok, "worst": worst,
            "touched_per_update": touched / total, "rebuild_ok": rebuild_ok,
            "rebuilds": list(st.rebuild_count)}


def test_criterion_08_dynamic_invariants():
    batt_passed = 0
    all_sizes = all_lazy = all_rebuild = True
    for seed in range(10):
        r = _run_dynamic_seed(seed, n=80, n_ins=5000, n_del=2000,
                              capacity=8192, with_battery=True)
        all_sizes &= r["sizes_ok"]
        all_lazy &= r["lazy_ok"]
        all_rebuild &= r["rebuild_ok"]
        batt_passed += r["worst"] <= 0.5
    # touched-slot scaling: double m at fixed n, compare per-update cost
    small = _run_dynamic_seed(0, n=80, n_ins=2500, n_del=1000,
                              capacity=4096, with_battery=False)
    big = _run_dynamic_seed(0, n=80, n_ins=5000, n_del=2000,
                            capacity=8192, with_battery=False)
    ratio = big["touched_per_update"] / max(small["touched_per_update"],
                                            1e-9)
    ok = (all_sizes and all_lazy and all_rebuild and batt_passed >= 8
          and ratio <= 4.0)
    _line(8, ok, f"sizes={all_sizes} lazy={all_lazy} rebuilds={all_rebuild} "
          f"battery={batt_passed}/10 touched-ratio={ratio:.2f} (<= 4)")
    assert all_sizes and all_lazy and all_rebuild
    assert batt_passed >= 8
    assert ratio <= 4.0


def test_criterion_09_sketch_linearity_bit_exact():
    replay_ok = roundtrip_ok = True
    for idx in range(50):
        rng = substream(9000 + idx, "c9")
        n = int(rng.integers(8, 21))
        m = int(rng.integers(10, 50))
        h = gen_random_hypergraph(n, m, 2, min(5, n), seed=9100 + idx)
        direct = sketch_construct(h, 0.5, seed=idx)
        churn = HypergraphSketch(n, max(m, 2), 0.5, idx)
        extras = []
        for i, e in enumerate(h.edges()):
            churn.insert(e)
            if rng.random() < 0.5:
                ghost = Hyperedge(10_000 + i, e.vertices, 1.0)
                churn.insert(ghost)
                extras.append(ghost.id)
        for gid in extras:
            churn.delete(gid)
        if direct.serialize() != churn.serialize():
            replay_ok = False
        blob = direct.serialize()
        if HypergraphSketch.deserialize(blob).serialize() != blob:
            roundtrip_ok = False
    ok = replay_ok and roundtrip_ok
    _line(9, ok, f"replay_bit_exact={replay_ok} "
          f"serialize_roundtrip={roundtrip_ok} over 50 pairs")
    assert replay_ok and roundtrip_ok


def test_criterion_10_heavy_hitter_guarantee():
    u = 1024
    depth = 4 * int(math.ceil(math.log2(u)))
    trials = 200
    summary = {}
    all_ok = True
    for eta in (0.1, 0.05):
        support = int(round(1 / eta ** 2))
        for shape_id, shape in enumerate(("one-heavy", "flat", "sparse")):
            good = 0
            for trial in range(trials):
                x = np.zeros(u)
                if shape == "one-heavy":
                    x[7] = 1000.0
                elif shape == "flat":
                    x[:4 * support] = 1.0
                else:
                    x[:support] = 1.0
                sk = HeavyHitterSketch(eta, seed=trial * 31 + shape_id,
                                       depth=depth)
                for i in np.flatnonzero(x):
                    sk.update(int(i), int(x[i]))
                w = sk.decode(sk.row_l2_estimate(), range(u))
                vec_w = np.zeros(u)
                for i, est in w.items():
                    vec_w[i] = est
                err = np.abs(x - vec_w).max()
                good += err <= eta * np.linalg.norm(x)
            summary[(eta, shape)] = good
            all_ok &= good >= 0.95 * trials
    _line(10, all_ok, "pass counts per (eta, shape): "
          + ", ".join(f"{k}={v}/200" for k, v in summary.items()))
    assert all_ok, summary


def test_criterion_11_sketch_end_to_end():
    n, m, eps = 40, 500, 0.5
    passed = naive_passed = size_order = 0
    for seed in range(10):
        h = gen_random_hypergraph(n, m, 3, 6, seed=700 + seed)
        sk = sketch_construct(h, eps, seed=seed)
        out, _ = sketch_recover(sk)
        rep = verify_spectral(h, out.to_hypergraph(h), eps, trials=200,
                              seed=99, exhaustive=False)
        passed += rep.max_rel_error <= eps
        nv_out, _, nv_sk = naive_sketch(h, eps, seed=seed)
        rep_nv = verify_spectral(h, nv_out.to_hypergraph(h), eps, trials=200,
                                 seed=99, exhaustive=False)
        naive_passed += rep_nv.max_rel_error <= eps
        size_order += (nv_sk.bit_size()["cells_bits"]
                       > sk.bit_size()["cells_bits"])
    # n <= 12 sub-instances: exhaustive cut check
    sub_passed = 0
    for seed in range(10):
        hs = gen_random_hypergraph(12, 120, 3, 6, seed=800 + seed)
        sks = sketch_construct(hs, eps, seed=seed)
        outs, _ = sketch_recover(sks)
        reps = verify_spectral(hs, outs.to_hypergraph(hs), eps, trials=0,
                               seed=99, exhaustive=True)
        sub_passed += reps.max_rel_error <= eps
    ok = (passed >= 8 and naive_passed >= 8 and size_order == 10
          and sub_passed >= 8)
    _line(11, ok, f"battery={passed}/10 naive={naive_passed}/10 "
          f"naive_larger={size_order}/10 exhaustive-sub={sub_passed}/10")
    assert passed >= 8
    assert naive_passed >= 8
    assert size_order == 10
    assert sub_passed >= 8


def test_criterion_12_size_scaling_regression():
    n, eps = 100, 0.5
    ratios = []
    for seed in range(3):
        sizes = []
        for m in (5000, 10000, 20000):
            h = gen_random_hypergraph(n, m, 4, 8, seed=300 + seed)
            out = sparsify_static(h, eps, SparsifyConfig(seed=seed))
            sizes.append(out.size)
        ratios.append(sizes[1] / sizes[0])
        ratios.append(sizes[2] / sizes[1])
    ok = all(r <= 1.5 for r in ratios)
    _line(12, ok, "per-doubling ratios: "
          + ", ".join(f"{r:.2f}" for r in ratios) + " (<= 1.5)")
    assert ok, ratios
