"""Static sparsification: round-planned vertex sampling plus
resistance-proportional recovery, iterated over halving levels.

The recovery loop works per arity/weight bucket on unit weights. Each level
runs a fixed schedule of vertex-sampling rounds; multi-edges of the
projected clique expansion are kept with probability min(1, lambda * R) and
their parent hyperedges are recovered and deleted before the next round.
Hyperedges never recovered at a level survive an independent fair coin into
the next level, where recovered edges get twice the weight.

Desk-scale constants: the asymptotic polylog factors are replaced by the
two tunables ``c_rounds`` (round schedule multiplier) and ``c_lambda``
(per-level oversampling budget, spread uniformly over the rounds of the
level). Defaults are calibrated so that dense random instances sparsify
while structurally critical edges are still recovered with high
probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .hypergraph import Hypergraph, bucket_by_arity_and_weight
from .multigraph import MultiGraph
from .resistance import DENSE_VERTEX_LIMIT, edge_resistances
from .rng import substream


def _log2_ceil(x: int) -> int:
    return max(1, int(math.ceil(math.log2(max(x, 2)))))


@dataclass(frozen=True)
class SparsifyConfig:
    """Tunables standing in for the theory's polylog factors."""

    c_rounds: float = 4.0          # rounds per level: c_rounds * r * ceil(log2 n)
    c_lambda: float = 2.0          # per-level oversampling budget: c_lambda / eps^2
    c_floor: float = 4.0           # keep whole residual once it has <= c_floor * n edges
    eps_split: bool = False        # run with eps' = eps / ceil(log2 m)
    max_levels: int | None = None  # default ceil(log2 m) + 10
    p_override: float | None = None  # vertex-sampling rate override (tests)
    dense_vertex_limit: int = DENSE_VERTEX_LIMIT
    approx_delta: float = 0.1      # folded into lambda when the approx path runs
    seed: int = 0

    def rounds(self, n: int, r: int) -> int:
        return max(1, int(round(self.c_rounds * r * _log2_ceil(n))))

    def level_budget(self, eps_eff: float) -> float:
        return self.c_lambda / (eps_eff * eps_eff)

    def sampling_rate(self, r: int) -> float:
        if self.p_override is not None:
            return self.p_override
        return 1.0 / r

    def levels(self, m: int) -> int:
        if self.max_levels is not None:
            return self.max_levels
        return _log2_ceil(m) + 10


def effective_epsilon(eps: float, m: int, config: SparsifyConfig) -> float:
    """eps / ceil(log2 max(m, 2)) when the split is enabled, else eps."""
    if not (0.0 < eps < 1.0):
        raise ValueError("eps must be in (0, 1)")
    if not config.eps_split:
        return eps
    return eps / _log2_ceil(max(m, 2))


@dataclass
class SamplingPlan:
    """Upfront simulation of all vertex-sampling rounds of one recovery call."""

    rounds: int
    rate: float
    gamma: list[np.ndarray]        # per vertex: sorted round indices
    membership: np.ndarray         # bool, shape (rounds, n)

    def edge_round_members(self, vertices: tuple[int, ...],
                           round_index: int) -> list[int]:
        row = self.membership[round_index]
        return [v for v in vertices if row[v]]


def plan_rounds(n: int, r: int, config: SparsifyConfig,
                rng: np.random.Generator) -> SamplingPlan:
    """Draw, per vertex, the set of rounds in which it is sampled.

    K_u ~ Binomial(N, rate), then K_u distinct rounds chosen uniformly.
    """
    if r < 2:
        raise ValueError("bucket base arity must be >= 2")
    n_rounds = config.rounds(n, r)
    rate = config.sampling_rate(r)
    membership = np.zeros((n_rounds, n), dtype=bool)
    gamma = []
    for u in range(n):
        k_u = int(rng.binomial(n_rounds, rate))
        picks = rng.choice(n_rounds, size=k_u, replace=False)
        picks.sort()
        gamma.append(picks.astype(np.int64))
        membership[picks, u] = True
    return SamplingPlan(rounds=n_rounds, rate=rate, gamma=gamma,
                        membership=membership)


_PAIR_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _pair_template(k: int) -> tuple[np.ndarray, np.ndarray]:
    if k not in _PAIR_CACHE:
        ia, ib = np.triu_indices(k, 1)
        _PAIR_CACHE[k] = (ia.astype(np.int64), ib.astype(np.int64))
    return _PAIR_CACHE[k]


def vs(h: Hypergraph, lam: float, plan: SamplingPlan, seed: int,
       dense_vertex_limit: int = DENSE_VERTEX_LIMIT,
       approx_delta: float = 0.1) -> set[int]:
    """One recovery call: returns the ids of recovered hyperedges.

    Per round, the clique expansion of the *remaining* hyperedges projected
    onto the round's vertex set is sampled at rate min(1, lam * R); sampled
    multi-edges recover their parent hyperedges, which are deleted before
    the next round.
    """
    ids = h.edge_ids()
    if not ids:
        return set()
    edges = [h.edge(eid) for eid in ids]
    verts = [np.asarray(e.vertices, dtype=np.int64) for e in edges]
    remaining = np.ones(len(ids), dtype=bool)
    recovered: set[int] = set()
    if lam <= 0:
        return recovered
    for rnd in range(plan.rounds):
        if not remaining.any():
            break
        row = plan.membership[rnd]
        us_parts, vs_parts, owner_parts = [], [], []
        for j in np.flatnonzero(remaining):
            pv = verts[j][row[verts[j]]]
            k = len(pv)
            if k < 2:
                continue
            ia, ib = _pair_template(k)
            us_parts.append(pv[ia])
            vs_parts.append(pv[ib])
            owner_parts.append(np.full(len(ia), j, dtype=np.int64))
        if not us_parts:
            continue
        us = np.concatenate(us_parts)
        vs_ = np.concatenate(vs_parts)
        owners = np.concatenate(owner_parts)
        g = MultiGraph.from_arrays(h.n, us, vs_,
                                   np.asarray([ids[o] for o in owners],
                                              dtype=np.int64))
        res, exact = edge_resistances(g, dense_vertex_limit, approx_delta,
                                      seed=substream(seed, "res", rnd)
                                      .integers(2**63))
        lam_round = lam if exact else lam / (1.0 - approx_delta)
        probs = np.where(np.isinf(res), 1.0, np.minimum(1.0, lam_round * res))
        rng = substream(seed, "round", rnd)
        keep = rng.random(g.num_edges) < probs
        if keep.any():
            hit = np.unique(owners[keep])
            remaining[hit] = False
            recovered.update(ids[int(o)] for o in hit)
    return recovered


@dataclass
class SparsifierOutput:
    """Kept hyperedges with their power-of-two recovery weights."""

    kept: list[tuple[int, float]] = field(default_factory=list)
    levels: int = 0
    warnings: list[str] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.kept)

    def weight_map(self) -> dict[int, float]:
        return dict(self.kept)

    def to_hypergraph(self, base: Hypergraph) -> Hypergraph:
        return base.reweighted(self.weight_map())

    def merged_with(self, other: "SparsifierOutput") -> "SparsifierOutput":
        out = SparsifierOutput(kept=sorted(self.kept + other.kept),
                               levels=max(self.levels, other.levels),
                               warnings=self.warnings + other.warnings)
        return out


def run_level_pipeline(sub: Hypergraph, class_factor: float,
                       config: SparsifyConfig, seed: int, recover_fn,
                       instrument: dict | None = None) -> SparsifierOutput:
    """Level loop shared by the recovery engines.

    ``recover_fn(remaining, level, seed)`` returns the recovered edge id set
    for one level; everything unrecovered survives an independent fair coin
    into the next level at twice the weight. Once the residual is at
    sparsifier scale (<= c_floor * n edges) it is kept whole at the level
    weight, which stays an unbiased reweighting and caps deep-level
    variance.
    """
    out = SparsifierOutput()
    m = sub.num_edges
    if m == 0:
        return out
    remaining = sub
    max_levels = config.levels(m)
    floor = config.c_floor * sub.n
    for level in range(max_levels):
        if remaining.num_edges == 0:
            break
        weight = float(2 ** level) * class_factor
        if remaining.num_edges <= floor:
            for eid in remaining.edge_ids():
                out.kept.append((eid, weight))
            out.levels = max(out.levels, level)
            if instrument is not None:
                instrument.setdefault("levels", []).append({
                    "level": level, "input": remaining.num_edges,
                    "recovered": remaining.num_edges, "pool": 0,
                    "survived": 0, "floor": True})
            return out
        f_level = recover_fn(remaining, level,
                             int(substream(seed, "recover", level)
                                 .integers(2**63)))
        for eid in sorted(f_level):
            out.kept.append((eid, weight))
        out.levels = level + 1
        survivors_pool = [eid for eid in remaining.edge_ids()
                          if eid not in f_level]
        coin_rng = substream(seed, "coin", level)
        coins = coin_rng.random(len(survivors_pool)) < 0.5
        survivors = {eid for eid, keep in zip(survivors_pool, coins) if keep}
        if instrument is not None:
            instrument.setdefault("levels", []).append({
                "level": level, "input": remaining.num_edges,
                "recovered": len(f_level), "pool": len(survivors_pool),
                "survived": len(survivors)})
        remaining = Hypergraph(
            sub.n, (e for e in remaining.edges() if e.id in survivors))
    if remaining.num_edges > 0:
        weight = float(2 ** max_levels) * class_factor
        for eid in remaining.edge_ids():
            out.kept.append((eid, weight))
        out.warnings.append(
            f"level budget exhausted with {remaining.num_edges} residual "
            f"edges kept at weight {weight}")
    return out


def _sparsify_bucket(sub: Hypergraph, r: int, class_factor: float, eps: float,
                     config: SparsifyConfig, seed: int,
                     instrument: dict | None = None) -> SparsifierOutput:
    m = sub.num_edges
    if m == 0:
        return SparsifierOutput()
    eps_eff = effective_epsilon(eps, m, config)
    budget = config.level_budget(eps_eff)

    def recover(remaining: Hypergraph, level: int, level_seed: int) -> set[int]:
        plan = plan_rounds(sub.n, r, config,
                           substream(level_seed, "plan"))
        lam_round = budget / plan.rounds
        return vs(remaining, lam_round, plan,
                  seed=int(substream(level_seed, "vs").integers(2**63)),
                  dense_vertex_limit=config.dense_vertex_limit,
                  approx_delta=config.approx_delta)

    return run_level_pipeline(sub, class_factor, config, seed, recover,
                              instrument)


def sparsify_static(h: Hypergraph, eps: float, config: SparsifyConfig,
                    instrument: dict | None = None) -> SparsifierOutput:
    """Static spectral sparsifier over all arity/weight buckets."""
    if not (0.0 < eps < 1.0):
        raise ValueError("eps must be in (0, 1)")
    total = SparsifierOutput()
    for bucket, j, sub in bucket_by_arity_and_weight(h):
        r = max(bucket.r, 2)
        inst = None
        if instrument is not None:
            inst = instrument.setdefault(("bucket", bucket.r, j), {})
        part = _sparsify_bucket(sub, r, float(2.0 ** j), eps, config,
                                seed=int(substream(config.seed, "bucket",
                                                   bucket.r, j)
                                         .integers(2**63)),
                                instrument=inst)
        total = total.merged_with(part)
    total.kept.sort()
    return total
