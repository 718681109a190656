"""Online sparsification: irrevocable keep/weight decisions per arriving
hyperedge against pre-initialized spanner bundles.

All randomness (per-(level, round) vertex subsets, per-edge level coins) is
derived from the seed by keyed hashing, so the decision for edge k is a
pure function of the seed and the first k inserted edges: prefix replay
reproduces decisions exactly and nothing arriving later can change them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hypergraph import Hyperedge, arity_bucket_base, weight_class
from .spanner import SpannerBundle, bundle_size, stretch_for
from .rng import fair_coin, substream
from .vs_sparsifier import SparsifierOutput


@dataclass(frozen=True)
class OnlineConfig:
    n: int
    m_max: int
    eps: float
    seed: int = 0
    c_rounds: float = 1.0          # rounds per bucket = max(1, round(c_rounds * r))
    c_ell: float = 1.0             # bundle size scale
    ell_cap: int = 4096
    p_override: float | None = None
    arity_range: tuple[int, int] | None = None

    @property
    def levels(self) -> int:
        return max(1, int(math.ceil(math.log2(max(self.m_max, 2)))) + 1)

    def rounds(self, r: int) -> int:
        return max(1, int(round(self.c_rounds * r)))


@dataclass
class Decision:
    edge_id: int
    kept: bool
    weight: float = 0.0
    level: int = -1
    bundle: tuple[int, int, int] | None = None   # (level, round, spanner)


class _OnlineBucket:
    """Bundles for one (arity base r, weight class) pair."""

    __slots__ = ("r", "config", "rounds", "vsets", "bundles", "key")

    def __init__(self, r: int, wclass: int, config: OnlineConfig):
        self.r = r
        self.config = config
        self.rounds = config.rounds(r)
        self.key = (r, wclass)
        rate = (config.p_override if config.p_override is not None
                else 1.0 / r)
        # vertex subsets per (level, round), committed up front from the seed
        self.vsets = np.zeros((config.levels, self.rounds, config.n),
                              dtype=bool)
        for i in range(config.levels):
            for j in range(self.rounds):
                rng = substream(config.seed, "online-vset", self.key, i, j)
                self.vsets[i, j] = rng.random(config.n) < rate
        self.bundles: dict[tuple[int, int], SpannerBundle] = {}

    def bundle(self, level: int, rnd: int) -> SpannerBundle:
        key = (level, rnd)
        if key not in self.bundles:
            n_proj = int(self.vsets[level, rnd].sum())
            self.bundles[key] = SpannerBundle(
                self.config.n,
                bundle_size(n_proj, self.config.eps, self.config.c_ell,
                            self.config.ell_cap),
                stretch_for(max(n_proj, 2)))
        return self.bundles[key]

    def offer_at_level(self, verts: np.ndarray, level: int,
                       ) -> tuple[int, int] | None:
        """Offer the projected multi-edges to every round's bundle at one
        level; returns (round, spanner index) of the first acceptance."""
        for j in range(self.rounds):
            mask = self.vsets[level, j]
            proj = verts[mask[verts]]
            if len(proj) < 2:
                continue
            b = self.bundle(level, j)
            for a in range(len(proj)):
                for c in range(a + 1, len(proj)):
                    kept, idx = b.try_insert(int(proj[a]), int(proj[c]))
                    if kept:
                        return j, idx
        return None


class OnlineState:
    """Single-writer online sparsifier state; kept list is append-only."""

    def __init__(self, config: OnlineConfig):
        self.config = config
        self.buckets: dict[tuple[int, int], _OnlineBucket] = {}
        self.decisions: list[Decision] = []
        self.kept: list[tuple[int, float]] = []
        self.inserted = 0

    def effective_ell(self) -> int:
        ells = [b.ell for bucket in self.buckets.values()
                for b in bucket.bundles.values()]
        return max(ells, default=0)


def online_insert(state: OnlineState, e: Hyperedge) -> Decision:
    """Decide keep(weight) or drop for one arriving hyperedge, irrevocably.

    Level cascade: offer the projected multi-edges to every bundle at the
    level; first acceptance keeps the edge at weight 2^level (times the
    weight-class factor) and stops. If every bundle rejects, the pre-committed
    level coin decides between dropping forever and advancing a level.
    """
    config = state.config
    if e.vertices[-1] >= config.n:
        raise ValueError(f"vertex {e.vertices[-1]} out of range n={config.n}")
    if config.arity_range is not None:
        lo, hi = config.arity_range
        if not (lo <= e.arity <= hi):
            raise ValueError(f"arity {e.arity} outside configured [{lo}, {hi}]")
    state.inserted += 1
    wclass = weight_class(e.weight)
    decision = Decision(edge_id=e.id, kept=False)
    if e.arity >= 2:
        r = max(arity_bucket_base(e.arity), 2)
        key = (r, wclass)
        if key not in state.buckets:
            state.buckets[key] = _OnlineBucket(r, wclass, config)
        bucket = state.buckets[key]
        verts = np.asarray(e.vertices, dtype=np.int64)
        for level in range(config.levels):
            hit = bucket.offer_at_level(verts, level)
            if hit is not None:
                weight = float(2 ** level) * float(2.0 ** wclass)
                decision = Decision(e.id, True, weight, level,
                                    (level, hit[0], hit[1]))
                break
            if not fair_coin(config.seed, "online-coin", e.id, level):
                break
    else:
        # spectrally null: cascade coins as if every bundle rejected
        for level in range(config.levels):
            if not fair_coin(config.seed, "online-coin", e.id, level):
                break
    state.decisions.append(decision)
    if decision.kept:
        state.kept.append((e.id, decision.weight))
    return decision


def online_finalize(state: OnlineState) -> SparsifierOutput:
    """Materialize the kept list; idempotent, inserts may continue after."""
    out = SparsifierOutput(kept=sorted(state.kept))
    out.levels = 1 + max((d.level for d in state.decisions if d.kept),
                         default=-1)
    out.stats = {"inserted": state.inserted, "kept": len(state.kept),
                 "effective_ell": state.effective_ell()}
    return out


def decision_log_lines(decisions: list[Decision]) -> list[str]:
    lines = []
    for d in decisions:
        if d.kept:
            lines.append(f"KEEP {d.edge_id} {d.weight!r}")
        else:
            lines.append(f"DROP {d.edge_id}")
    return lines
