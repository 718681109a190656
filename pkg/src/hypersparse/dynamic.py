"""Fully dynamic sparsification: decremental label-respecting bundles plus
the binary-counter reduction from decremental to fully dynamic.

A decremental instance owns a frozen edge set and supports deletions. Per
(arity base, weight class) bucket it draws per-round vertex subsets, and
per (round, level) it keeps a spanner bundle plus a slot table: copy count
w_e, the ordered set of spanner indices using the slot (t_e many, f_e the
maximum), and the ordered set of labels present. The t_e labels in use are
always exactly the t_e smallest, which makes deletion-side label handoffs
O(log) decisions.

The fully dynamic state keeps k = ceil(log2 capacity) decremental
instances; inserting flushes the lower instances into the flipped counter
bit's instance and rebuilds it with fresh keyed randomness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from sortedcontainers import SortedList

from .hypergraph import Hyperedge, Hypergraph, arity_bucket_base, weight_class
from .spanner import SpannerBundle, bundle_size, stretch_for
from .rng import derive_seed, key_bits, substream
from .vs_sparsifier import SparsifierOutput


@dataclass(frozen=True)
class DynamicConfig:
    n: int
    m_capacity: int
    eps: float
    seed: int = 0
    c_rounds: float = 1.5
    c_ell: float = 2.0
    ell_cap: int = 4096
    p_override: float | None = None
    label_bits_factor: int = 4     # short labels carry C * ceil(log2 m) bits

    def rounds(self, r: int) -> int:
        return max(1, int(round(self.c_rounds * r)))

    @property
    def label_bits(self) -> int:
        return max(16, self.label_bits_factor
                   * max(1, int(math.ceil(math.log2(max(self.m_capacity, 2))))))


@dataclass(frozen=True)
class Change:
    """One maintained-sparsifier delta: kind in {ADD, DEL, REW}."""

    kind: str
    edge_id: int
    weight: float = 0.0

    def line(self) -> str:
        if self.kind == "DEL":
            return f"DEL {self.edge_id}"
        return f"{self.kind} {self.edge_id} {self.weight!r}"


class IntersectionTable:
    """Per vertex: the sorted list of rounds whose subset contains it."""

    def __init__(self, vsets: np.ndarray):
        self.vsets = vsets                      # (rounds, n) bool
        self.rounds_of = [np.flatnonzero(vsets[:, v]) for v in
                          range(vsets.shape[1])]


def intersections_for(e: Hyperedge, tab: IntersectionTable) -> list[list[int]]:
    """L_i = e intersect V^(i) for every round i, via the per-vertex lists."""
    out: list[list[int]] = [[] for _ in range(tab.vsets.shape[0])]
    for v in e.vertices:
        for i in tab.rounds_of[v]:
            out[int(i)].append(v)
    return out


class EdgeSlotEntry:
    """Bookkeeping for one multi-edge slot inside one (round, level) bundle."""

    __slots__ = ("w", "index_tree", "label_tree")

    def __init__(self):
        self.w = 0
        self.index_tree: SortedList = SortedList()
        self.label_tree: SortedList = SortedList()

    @property
    def t(self) -> int:
        return len(self.index_tree)

    @property
    def f(self) -> int | None:
        return self.index_tree[-1] if self.index_tree else None

    def in_use_labels(self) -> list[int]:
        return list(self.label_tree.islice(0, self.t))

    def consistent(self) -> bool:
        return (self.t <= self.w and len(self.label_tree) == self.w
                and (self.f is None or self.f == max(self.index_tree)))


class _LevelBundle:
    """Spanner bundle plus slot table for one (bucket, round, level)."""

    __slots__ = ("bundle", "slots")

    def __init__(self, n: int, ell: int, stretch: int):
        self.bundle = SpannerBundle(n, ell, stretch)
        self.slots: dict[tuple[int, int], EdgeSlotEntry] = {}

    def slot(self, u: int, v: int) -> EdgeSlotEntry:
        key = (u, v) if u < v else (v, u)
        if key not in self.slots:
            self.slots[key] = EdgeSlotEntry()
        return self.slots[key]


class _Bucket:
    """Per (arity base, weight class) machinery of one decremental instance."""

    __slots__ = ("r", "wclass", "rounds", "vsets", "table", "levels",
                 "bundles", "config", "seed")

    def __init__(self, r: int, wclass: int, levels: int,
                 config: DynamicConfig, seed: int):
        self.r = r
        self.wclass = wclass
        self.levels = levels
        self.config = config
        self.seed = seed
        self.rounds = config.rounds(r)
        rate = (config.p_override if config.p_override is not None
                else 1.0 / r)
        vsets = np.zeros((self.rounds, config.n), dtype=bool)
        for j in range(self.rounds):
            rng = substream(seed, "dyn-vset", r, wclass, j)
            vsets[j] = rng.random(config.n) < rate
        self.vsets = vsets
        self.table = IntersectionTable(vsets)
        self.bundles: dict[tuple[int, int], _LevelBundle] = {}

    def level_bundle(self, rnd: int, level: int) -> _LevelBundle:
        key = (rnd, level)
        if key not in self.bundles:
            n_proj = int(self.vsets[rnd].sum())
            self.bundles[key] = _LevelBundle(
                self.config.n,
                bundle_size(n_proj, self.config.eps, self.config.c_ell,
                            self.config.ell_cap),
                stretch_for(max(n_proj, 2)))
        return self.bundles[key]


@dataclass
class _Placement:
    bucket: tuple[int, int]
    rnd: int
    level: int
    slot: tuple[int, int]


class DecrementalInstance:
    """Deletion-only sparsifier instance over a frozen initial edge set.

    Initialization offers every hyperedge, in id order per round, cascading
    through coin-gated levels until recovered or filtered; recovered edges
    leave the active set before the next round. Deletion updates the slot
    tables, hands spanner positions to replacement labels, and lazily
    re-offers unused residual copies, emitting the exact change list.
    """

    def __init__(self, h: Hypergraph, config: DynamicConfig, seed: int,
                 collect_changes: bool = False):
        self.config = config
        self.seed = seed
        self.edges: dict[int, Hyperedge] = {e.id: e for e in h.edges()}
        self.label_of: dict[int, int] = {}
        self.id_of_label: dict[int, int] = {}
        self.buckets: dict[tuple[int, int], _Bucket] = {}
        self.placements: dict[int, list[_Placement]] = {}
        self.in_use: dict[int, set[tuple]] = {}
        self.weight_level: dict[int, int] = {}
        self.label_retries = 0
        self.max_cascade = 0
        self.touched_slots = 0
        changes: list[Change] = []
        self._assign_labels()
        self._init_offer_all(changes)
        self.init_changes = changes if collect_changes else []

    # -- labels ---------------------------------------------------------

    def _assign_labels(self):
        bits = self.config.label_bits
        for eid in sorted(self.edges):
            attempt = 0
            while True:
                label = key_bits(bits, self.seed, "label", eid, attempt)
                if label not in self.id_of_label:
                    break
                attempt += 1
                self.label_retries += 1
            self.label_of[eid] = label
            self.id_of_label[label] = eid

    def _bucket_for(self, e: Hyperedge) -> _Bucket:
        key = (max(arity_bucket_base(e.arity), 2), weight_class(e.weight))
        if key not in self.buckets:
            m = max(len(self.edges), 2)
            levels = max(1, int(math.ceil(math.log2(m))) + 2)
            self.buckets[key] = _Bucket(key[0], key[1], levels, self.config,
                                        derive_seed(self.seed, "bucket", key))
        return self.buckets[key]

    def _level_coin(self, eid: int, level: int) -> bool:
        return bool(derive_seed(self.seed, "dyn-coin", self.label_of[eid],
                                level) & 1)

    # -- recovered bookkeeping -------------------------------------------

    def recovered_weight(self, eid: int) -> float | None:
        if not self.in_use.get(eid):
            return None
        level = min(p[2] for p in self.in_use[eid])
        e = self.edges[eid]
        return float(2 ** level) * float(2.0 ** weight_class(e.weight))

    def recovered_map(self) -> dict[int, float]:
        out = {}
        for eid, refs in self.in_use.items():
            if refs:
                out[eid] = self.recovered_weight(eid)
        return out

    def _sync_slot_refs(self, bucket_key, rnd, level, slot_key,
                        entry: EdgeSlotEntry, changes: list[Change],
                        newly_recovered: list[int]):
        """Recompute which labels of one slot are in use and emit deltas."""
        self.touched_slots += 1
        ref_key = (bucket_key, rnd, level, slot_key)
        current = {self.id_of_label[lab] for lab in entry.in_use_labels()}
        previous = self._slot_owners.get(ref_key, set())
        for eid in previous - current:
            self._drop_ref(eid, ref_key, changes)
        for eid in current - previous:
            self._add_ref(eid, ref_key, changes, newly_recovered)
        if current:
            self._slot_owners[ref_key] = current
        else:
            self._slot_owners.pop(ref_key, None)

    def _add_ref(self, eid, ref_key, changes, newly_recovered):
        refs = self.in_use.setdefault(eid, set())
        before = self.recovered_weight(eid)
        refs.add(ref_key)
        after = self.recovered_weight(eid)
        if before is None:
            changes.append(Change("ADD", eid, after))
            newly_recovered.append(eid)
        elif after != before:
            changes.append(Change("REW", eid, after))

    def _drop_ref(self, eid, ref_key, changes):
        refs = self.in_use.get(eid)
        if not refs or ref_key not in refs:
            return
        before = self.recovered_weight(eid)
        refs.discard(ref_key)
        after = self.recovered_weight(eid)
        if after is None:
            changes.append(Change("DEL", eid))
        elif after != before:
            changes.append(Change("REW", eid, after))

    # -- initialization ---------------------------------------------------

    def _init_offer_all(self, changes: list[Change]):
        self._slot_owners: dict[tuple, set[int]] = {}
        active = sorted(self.edges)
        by_bucket: dict[tuple[int, int], list[int]] = {}
        for eid in active:
            e = self.edges[eid]
            self.placements.setdefault(eid, [])
            if e.arity < 2:
                continue
            key = (max(arity_bucket_base(e.arity), 2), weight_class(e.weight))
            by_bucket.setdefault(key, []).append(eid)
            self._bucket_for(e)
        for key in sorted(by_bucket):
            bucket = self.buckets[key]
            active_ids = by_bucket[key]
            for rnd in range(bucket.rounds):
                if not active_ids:
                    break
                recovered_round: set[int] = set()
                survivors = list(active_ids)
                row = bucket.vsets[rnd]
                for level in range(bucket.levels):
                    if not survivors:
                        break
                    lb = bucket.level_bundle(rnd, level)
                    touched: set[tuple[int, int]] = set()
                    offered: list[int] = []
                    for eid in survivors:
                        verts = [v for v in self.edges[eid].vertices if row[v]]
                        if len(verts) < 2:
                            continue
                        offered.append(eid)
                        label = self.label_of[eid]
                        for a in range(len(verts)):
                            for b in range(a + 1, len(verts)):
                                u, v = verts[a], verts[b]
                                slot_key = (u, v)
                                entry = lb.slot(u, v)
                                if entry.w == entry.t:
                                    start = 0 if entry.f is None else entry.f + 1
                                    kept, idx = lb.bundle.try_insert_at(
                                        u, v, start)
                                    if kept:
                                        entry.index_tree.add(idx)
                                entry.w += 1
                                entry.label_tree.add(label)
                                touched.add(slot_key)
                                self.placements[eid].append(
                                    _Placement(key, rnd, level, slot_key))
                    newly: list[int] = []
                    for slot_key in sorted(touched):
                        self._sync_slot_refs(key, rnd, level, slot_key,
                                             lb.slots[slot_key], changes,
                                             newly)
                    recovered_here = {eid for eid in offered
                                      if self.in_use.get(eid)}
                    recovered_round |= recovered_here
                    survivors = [eid for eid in survivors
                                 if eid not in recovered_here
                                 and self._level_coin(eid, level)]
                active_ids = [eid for eid in active_ids
                              if eid not in recovered_round]

    # -- deletion ----------------------------------------------------------

    def delete(self, eid: int) -> list[Change]:
        if eid not in self.edges:
            raise KeyError(f"unknown hyperedge id {eid}")
        changes: list[Change] = []
        # work items: (edge to strip, (round, level) strictly after which
        # its placements must go; None strips everything)
        queue: list[tuple[int, tuple[int, int] | None]] = [(eid, None)]
        seen: set[tuple[int, tuple[int, int] | None]] = set()
        while queue:
            work = queue.pop(0)
            if work in seen:
                continue
            seen.add(work)
            target, frontier = work
            self._strip_placements(target, frontier, changes, queue)
        label = self.label_of.pop(eid)
        self.id_of_label.pop(label, None)
        self.edges.pop(eid)
        self.placements.pop(eid, None)
        refs = self.in_use.pop(eid, set())
        if refs:
            changes.append(Change("DEL", eid))
        return _dedupe_changes(changes)

    def _strip_placements(self, eid: int, frontier: tuple[int, int] | None,
                          changes: list[Change],
                          queue: list[tuple[int, tuple[int, int] | None]]):
        keep: list[_Placement] = []
        plist = self.placements.get(eid, [])
        label = self.label_of[eid]
        cascade = 0
        for p in plist:
            if frontier is not None and (p.rnd, p.level) <= frontier:
                keep.append(p)
                continue
            bucket = self.buckets[p.bucket]
            lb = bucket.level_bundle(p.rnd, p.level)
            entry = lb.slots.get(p.slot)
            if entry is None or label not in entry.label_tree:
                continue
            rank = entry.label_tree.index(label)
            was_in_use = rank < entry.t
            entry.label_tree.remove(label)
            entry.w -= 1
            if was_in_use and entry.w < entry.t:
                # structural removal: the copy attributed to the highest
                # spanner index goes away
                f = entry.f
                entry.index_tree.remove(f)
                lb.bundle.remove(p.slot[0], p.slot[1], f)
                cascade += 1
                self._reoffer(p.bucket, p.rnd, p.level, lb, f, changes,
                              queue)
            newly: list[int] = []
            self._sync_slot_refs(p.bucket, p.rnd, p.level, p.slot, entry,
                                 changes, newly)
            if not entry.label_tree:
                lb.slots.pop(p.slot, None)
            for new_eid in newly:
                queue.append((new_eid, self._recovery_frontier(new_eid)))
        self.max_cascade = max(self.max_cascade, cascade)
        if frontier is not None:
            self.placements[eid] = keep

    def _recovery_frontier(self, eid: int) -> tuple[int, int] | None:
        refs = self.in_use.get(eid)
        if not refs:
            return None
        return min((r[1], r[2]) for r in refs)

    def _reoffer(self, bucket_key, rnd, level, lb: _LevelBundle,
                 spanner_index: int, changes: list[Change],
                 queue: list[tuple[int, tuple[int, int] | None]]):
        """After a spanner lost an edge, offer residual unused copies to it,
        in slot order, stopping at the first acceptance."""
        for slot_key in sorted(lb.slots):
            entry = lb.slots[slot_key]
            if entry.w <= entry.t:
                continue
            if lb.bundle.spanners[spanner_index].try_insert(*slot_key):
                lb.bundle.occupancy.setdefault(slot_key, []).append(
                    spanner_index)
                entry.index_tree.add(spanner_index)
                newly: list[int] = []
                self._sync_slot_refs(bucket_key, rnd, level, slot_key, entry,
                                     changes, newly)
                for new_eid in newly:
                    queue.append((new_eid, self._recovery_frontier(new_eid)))
                return

    # -- audits ------------------------------------------------------------

    def audit_tables(self) -> bool:
        for bucket in self.buckets.values():
            for lb in bucket.bundles.values():
                for entry in lb.slots.values():
                    if not entry.consistent():
                        return False
        return True


def _dedupe_changes(changes: list[Change]) -> list[Change]:
    """Collapse intermediate states: keep the net effect per edge id, in
    first-touched order."""
    order: list[int] = []
    last: dict[int, Change] = {}
    first_kind: dict[int, str] = {}
    for c in changes:
        if c.edge_id not in last:
            order.append(c.edge_id)
            first_kind[c.edge_id] = c.kind
        last[c.edge_id] = c
    out = []
    for eid in order:
        c = last[eid]
        if first_kind[eid] == "ADD" and c.kind == "DEL":
            continue   # appeared and vanished within one update
        if first_kind[eid] == "ADD" and c.kind == "REW":
            c = Change("ADD", eid, c.weight)
        out.append(c)
    return out


def decremental_init(h: Hypergraph, config: DynamicConfig, seed: int,
                     ) -> DecrementalInstance:
    return DecrementalInstance(h, config, seed, collect_changes=True)


def decremental_delete(inst: DecrementalInstance, eid: int) -> list[Change]:
    return inst.delete(eid)


@dataclass
class DynamicOp:
    insert: Hyperedge | None = None
    delete_id: int | None = None


class DynamicState:
    """Binary-counter composition of decremental instances."""

    def __init__(self, config: DynamicConfig):
        self.config = config
        self.k = max(1, int(math.ceil(math.log2(max(config.m_capacity, 2)))))
        self.edge_sets: list[dict[int, Hyperedge]] = [dict() for _ in
                                                      range(self.k + 1)]
        self.instances: list[DecrementalInstance | None] = [None] * (self.k + 1)
        self.rebuild_count = [0] * (self.k + 1)
        self.insertions = 0
        self.owner: dict[int, int] = {}
        self.mirror: dict[int, float] = {}

    def _apply_to_mirror(self, changes: list[Change]) -> list[Change]:
        applied = []
        for c in changes:
            if c.kind == "DEL":
                if c.edge_id in self.mirror:
                    del self.mirror[c.edge_id]
                    applied.append(c)
            else:
                prev = self.mirror.get(c.edge_id)
                if prev is None:
                    self.mirror[c.edge_id] = c.weight
                    applied.append(Change("ADD", c.edge_id, c.weight))
                elif prev != c.weight:
                    self.mirror[c.edge_id] = c.weight
                    applied.append(Change("REW", c.edge_id, c.weight))
        return applied

    def update(self, op: DynamicOp) -> list[Change]:
        if op.insert is not None:
            return self._insert(op.insert)
        if op.delete_id is None:
            raise ValueError("malformed op: neither insert nor delete")
        return self._delete(op.delete_id)

    def _insert(self, e: Hyperedge) -> list[Change]:
        if self.insertions >= 2 ** self.k:
            raise RuntimeError(
                f"insert count would exceed configured capacity "
                f"{self.config.m_capacity}")
        if e.id in self.owner:
            raise ValueError(f"hyperedge id {e.id} already live")
        self.insertions += 1
        c = self.insertions
        j = 1 + _trailing_zeros(c)
        j = min(j, self.k)
        merged: dict[int, Hyperedge] = {}
        for i in range(1, j):
            merged.update(self.edge_sets[i])
            self.edge_sets[i] = {}
            self.instances[i] = None
        merged.update(self.edge_sets[j])
        merged[e.id] = e
        self.edge_sets[j] = merged
        for eid in merged:
            self.owner[eid] = j
        self.rebuild_count[j] += 1
        inst_seed = derive_seed(self.config.seed, "instance", j,
                                self.rebuild_count[j])
        self.instances[j] = DecrementalInstance(
            Hypergraph(self.config.n, merged.values()), self.config,
            inst_seed)
        return self._refresh_mirror()

    def _delete(self, eid: int) -> list[Change]:
        if eid not in self.owner:
            raise KeyError(f"unknown hyperedge id {eid}")
        j = self.owner.pop(eid)
        self.edge_sets[j].pop(eid, None)
        inst = self.instances[j]
        changes = inst.delete(eid) if inst is not None else []
        return self._apply_to_mirror(changes)

    def _refresh_mirror(self) -> list[Change]:
        target: dict[int, float] = {}
        for inst in self.instances:
            if inst is not None:
                target.update(inst.recovered_map())
        changes = []
        for eid in sorted(set(self.mirror) - set(target)):
            changes.append(Change("DEL", eid))
        for eid in sorted(target):
            prev = self.mirror.get(eid)
            if prev is None:
                changes.append(Change("ADD", eid, target[eid]))
            elif prev != target[eid]:
                changes.append(Change("REW", eid, target[eid]))
        self.mirror = target
        return changes

    def sparsifier(self) -> SparsifierOutput:
        out = SparsifierOutput(kept=sorted(self.mirror.items()))
        out.stats = {"insertions": self.insertions,
                     "live": len(self.owner)}
        return out

    def live_sizes(self) -> list[int]:
        return [len(s) for s in self.edge_sets]


def dynamic_update(state: DynamicState, op: DynamicOp) -> list[Change]:
    return state.update(op)


def _trailing_zeros(x: int) -> int:
    return (x & -x).bit_length() - 1
