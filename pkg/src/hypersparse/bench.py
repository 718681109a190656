"""Benchmark plumbing: mode benchmarks plus the kernel comparison between
the compiled BFS core and the pure-Python fallback."""

from __future__ import annotations

import time

import numpy as np

from ._kernels import CGraphCore, PyGraphCore, HAVE_C_KERNEL
from .config import RunConfig
from .hypergraph import Hypergraph, gen_random_hypergraph
from .online import OnlineState, online_finalize, online_insert
from .recovery import hypergraph_sparsify_spanner
from .rng import substream
from .verify import verify_spectral
from .vs_sparsifier import sparsify_static


def bench_static(n: int, m: int, eps: float, config: RunConfig,
                 engine: str = "vs") -> dict:
    h = gen_random_hypergraph(n, m, 4, 8, seed=config.seed)
    t0 = time.perf_counter()
    if engine == "spanner":
        out = hypergraph_sparsify_spanner(h, eps, config.sparsify_config())
    else:
        out = sparsify_static(h, eps, config.sparsify_config())
    t1 = time.perf_counter()
    rep = verify_spectral(h, out.to_hypergraph(h), eps,
                          trials=config.verify_trials, seed=config.seed + 1,
                          exhaustive=False)
    return {"mode": "static", "engine": engine, "n": n, "m": m, "eps": eps,
            "size": out.size, "max_rel_error": rep.max_rel_error,
            "passed": rep.passed, "sparsify_seconds": t1 - t0,
            "verify_seconds": rep.wall_time}


def bench_online(n: int, m: int, eps: float, config: RunConfig) -> dict:
    h = gen_random_hypergraph(n, m, 4, 8, seed=config.seed)
    state = OnlineState(config.online_config(n, m))
    t0 = time.perf_counter()
    for e in h.edges():
        online_insert(state, e)
    t1 = time.perf_counter()
    out = online_finalize(state)
    rep = verify_spectral(h, out.to_hypergraph(h), eps,
                          trials=min(config.verify_trials, 100),
                          seed=config.seed + 1, exhaustive=False)
    return {"mode": "online", "n": n, "m": m, "eps": eps, "size": out.size,
            "max_rel_error": rep.max_rel_error, "passed": rep.passed,
            "insert_seconds": t1 - t0,
            "inserts_per_second": m / max(t1 - t0, 1e-9)}


def _kernel_workload(core_cls, n: int, ops: int, seed: int) -> float:
    rng = substream(seed, "kernel-bench")
    core = core_cls(n)
    stretch = max(2, int(np.ceil(np.log2(n))))
    pairs = rng.integers(0, n, size=(ops, 2))
    t0 = time.perf_counter()
    for u, v in pairs:
        u, v = int(u), int(v)
        if u == v:
            continue
        if not core.has_path_within(u, v, stretch):
            core.add_edge(u, v)
    return time.perf_counter() - t0


def bench_kernel(n: int = 256, ops: int = 20000, seed: int = 0) -> dict:
    """Compare the compiled BFS core against the pure-Python fallback on an
    insert-or-reject spanner workload."""
    out = {"mode": "kernel", "n": n, "ops": ops,
           "compiled_available": HAVE_C_KERNEL}
    py_s = _kernel_workload(PyGraphCore, n, ops, seed)
    out["python_seconds"] = py_s
    out["python_ops_per_second"] = ops / max(py_s, 1e-9)
    if HAVE_C_KERNEL:
        c_s = _kernel_workload(CGraphCore, n, ops, seed)
        out["compiled_seconds"] = c_s
        out["compiled_ops_per_second"] = ops / max(c_s, 1e-9)
        out["speedup"] = py_s / max(c_s, 1e-9)
    return out
