"""Spanner-based recovery: per-level bundles over coin-filtered multigraphs,
the outer vertex-sampling loop, and the spanner-engine sparsifier.

The per-edge level coins are committed up front from the seed, so recovery
order cannot bias survival: an edge is present at inner level i iff it has
not been recovered at a shallower level and its first i coins all came up
heads.
"""

from __future__ import annotations

import math

import numpy as np

from .hypergraph import Hypergraph, bucket_by_arity_and_weight
from .multigraph import MultiGraph
from .spanner import SpannerBundle, bundle_size, stretch_for
from .rng import fair_coin, substream
from .vs_sparsifier import (SparsifyConfig, SparsifierOutput,
                            effective_epsilon, plan_rounds,
                            run_level_pipeline, _pair_template)


def _level_count(m: int) -> int:
    return max(1, int(math.ceil(math.log2(max(m, 2)))) + 1)


def recursive_recovery(g: MultiGraph, ell: int, levels: int, seed: int,
                       stretch: int | None = None,
                       per_level: list[set[int]] | None = None) -> set[int]:
    """Multi-edge recovery through ``levels`` coin-filtered bundle stages.

    Returns the indices of recovered multi-edges. Bundle contents form F_i;
    an edge absent from F_i survives to level i+1 iff its pre-committed
    level-i coin is heads. Recovered edges freeze at their level.
    """
    t = stretch if stretch is not None else stretch_for(g.n)
    recovered: set[int] = set()
    alive = list(range(g.num_edges))
    for level in range(levels):
        if not alive:
            break
        bundle = SpannerBundle(g.n, ell, t)
        taken: set[int] = set()
        for i in alive:
            kept, _ = bundle.try_insert(int(g.us[i]), int(g.vs[i]))
            if kept:
                taken.add(i)
        recovered |= taken
        if per_level is not None:
            per_level.append(taken)
        alive = [i for i in alive
                 if i not in taken and fair_coin(seed, "coin", i, level)]
    return recovered


def repeated_recursive_recovery_spanner(h: Hypergraph, r: int, eps_eff: float,
                                        config: SparsifyConfig, seed: int,
                                        ell: int | None = None) -> set[int]:
    """Outer vertex-sampling rounds with per-round recursive bundle recovery.

    Per round: project the remaining hyperedges onto the round's vertex set,
    run recursive_recovery on the projected clique expansion, recover the
    hyperedges owning any recovered multi-edge, and delete them before the
    next round.
    """
    ids = h.edge_ids()
    if not ids:
        return set()
    plan = plan_rounds(h.n, r, config, substream(seed, "plan"))
    edges = [h.edge(eid) for eid in ids]
    verts = [np.asarray(e.vertices, dtype=np.int64) for e in edges]
    remaining = np.ones(len(ids), dtype=bool)
    recovered: set[int] = set()
    inner_levels = _level_count(h.num_edges)
    for rnd in range(plan.rounds):
        if not remaining.any():
            break
        row = plan.membership[rnd]
        n_proj = int(row.sum())
        if n_proj < 2:
            continue
        us_parts, vs_parts, owner_parts = [], [], []
        for j in np.flatnonzero(remaining):
            pv = verts[j][row[verts[j]]]
            if len(pv) < 2:
                continue
            ia, ib = _pair_template(len(pv))
            us_parts.append(pv[ia])
            vs_parts.append(pv[ib])
            owner_parts.append(np.full(len(ia), j, dtype=np.int64))
        if not us_parts:
            continue
        owners = np.concatenate(owner_parts)
        g = MultiGraph.from_arrays(h.n, np.concatenate(us_parts),
                                   np.concatenate(vs_parts),
                                   np.asarray([ids[o] for o in owners]))
        ell_round = ell if ell is not None else bundle_size(n_proj, eps_eff)
        hit = recursive_recovery(
            g, ell_round, inner_levels,
            seed=int(substream(seed, "rr", rnd).integers(2**63)),
            stretch=stretch_for(n_proj))
        if hit:
            owner_hit = np.unique(owners[list(hit)])
            remaining[owner_hit] = False
            recovered.update(ids[int(o)] for o in owner_hit)
    return recovered


def hypergraph_sparsify_spanner(h: Hypergraph, eps: float,
                                config: SparsifyConfig,
                                ell: int | None = None,
                                instrument: dict | None = None,
                                ) -> SparsifierOutput:
    """Static sparsifier with spanner-based recovery per level."""
    if not (0.0 < eps < 1.0):
        raise ValueError("eps must be in (0, 1)")
    total = SparsifierOutput()
    for bucket, j, sub in bucket_by_arity_and_weight(h):
        r = max(bucket.r, 2)
        m = sub.num_edges
        eps_eff = effective_epsilon(eps, m, config)

        def recover(remaining: Hypergraph, level: int, level_seed: int,
                    _r=r, _eps=eps_eff) -> set[int]:
            return repeated_recursive_recovery_spanner(
                remaining, _r, _eps, config, level_seed, ell=ell)

        inst = None
        if instrument is not None:
            inst = instrument.setdefault(("bucket", bucket.r, j), {})
        part = run_level_pipeline(
            sub, float(2.0 ** j), config,
            int(substream(config.seed, "spanner-bucket", bucket.r, j)
                .integers(2**63)),
            recover, instrument=inst)
        total = total.merged_with(part)
    total.kept.sort()
    return total
