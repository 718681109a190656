"""Hypergraph data model, energy/cut evaluation, bucketing, I/O, generators.

A hypergraph is a fixed vertex count ``n`` plus id-indexed weighted
hyperedges. Instances are immutable after construction and safe to share
across workers. Vertex ids are dense and 0-based; hyperedge ids are unique
non-negative integers (assignment-order sequential when generated here).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .rng import substream


@dataclass(frozen=True)
class Hyperedge:
    """A weighted hyperedge: strictly increasing vertex tuple, weight > 0."""

    id: int
    vertices: tuple[int, ...]
    weight: float = 1.0

    @property
    def arity(self) -> int:
        return len(self.vertices)

    def __post_init__(self):
        if self.id < 0:
            raise ValueError(f"hyperedge id must be non-negative, got {self.id}")
        if len(self.vertices) < 1:
            raise ValueError("hyperedge needs at least one vertex")
        if any(b <= a for a, b in zip(self.vertices, self.vertices[1:])):
            raise ValueError(f"vertices must be strictly increasing: {self.vertices}")
        if not self.weight > 0:
            raise ValueError(f"weight must be positive, got {self.weight}")


class Hypergraph:
    """Immutable weighted hypergraph on vertices 0..n-1."""

    __slots__ = ("n", "_edges", "_order", "_flat", "_offsets", "_weights")

    def __init__(self, n: int, edges: Iterable[Hyperedge] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        self._edges: dict[int, Hyperedge] = {}
        for e in edges:
            if e.id in self._edges:
                raise ValueError(f"duplicate hyperedge id {e.id}")
            if e.vertices[-1] >= n:
                raise ValueError(
                    f"hyperedge {e.id} touches vertex {e.vertices[-1]} >= n={n}")
            self._edges[e.id] = e
        self._order = sorted(self._edges)
        # Flat layout for batched evaluation: concatenated vertex lists.
        self._offsets = np.zeros(len(self._order) + 1, dtype=np.int64)
        parts = []
        weights = np.empty(len(self._order), dtype=np.float64)
        for i, eid in enumerate(self._order):
            e = self._edges[eid]
            parts.append(np.asarray(e.vertices, dtype=np.int64))
            self._offsets[i + 1] = self._offsets[i] + e.arity
            weights[i] = e.weight
        self._flat = (np.concatenate(parts) if parts
                      else np.zeros(0, dtype=np.int64))
        self._weights = weights

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def edge(self, eid: int) -> Hyperedge:
        return self._edges[eid]

    def __contains__(self, eid: int) -> bool:
        return eid in self._edges

    def edge_ids(self) -> list[int]:
        return list(self._order)

    def edges(self) -> Iterator[Hyperedge]:
        for eid in self._order:
            yield self._edges[eid]

    def total_weight(self) -> float:
        return float(math.fsum(e.weight for e in self.edges()))

    def reweighted(self, weights: dict[int, float]) -> "Hypergraph":
        """Sub-hypergraph with the given id -> weight map."""
        return Hypergraph(self.n, (
            Hyperedge(eid, self._edges[eid].vertices, w)
            for eid, w in weights.items()))

    def without(self, drop: set[int]) -> "Hypergraph":
        return Hypergraph(self.n, (e for e in self.edges() if e.id not in drop))


def quadratic_form(h: Hypergraph, x: Sequence[float]) -> float:
    """Energy of a potential vector: sum over edges of w * (max pair gap)^2.

    The max over vertex pairs of (x[u]-x[v])^2 equals (max - min)^2 over the
    edge, and the accumulation is exactly rounded (fsum), so the result is
    independent of edge order.
    """
    xv = np.asarray(x, dtype=np.float64)
    if xv.shape != (h.n,):
        raise ValueError(f"potential vector must have length {h.n}")
    if h.num_edges == 0:
        return 0.0
    vals = xv[h._flat]
    hi = np.maximum.reduceat(vals, h._offsets[:-1])
    lo = np.minimum.reduceat(vals, h._offsets[:-1])
    gaps = hi - lo
    return float(math.fsum(h._weights * gaps * gaps))


def quadratic_form_batch(h: Hypergraph, xs: np.ndarray) -> np.ndarray:
    """quadratic_form for each row of xs, vectorized (plain float64 sums)."""
    xs = np.asarray(xs, dtype=np.float64)
    if xs.ndim != 2 or xs.shape[1] != h.n:
        raise ValueError(f"expected shape (k, {h.n})")
    if h.num_edges == 0:
        return np.zeros(len(xs))
    out = np.empty(len(xs))
    # Chunked to bound the (chunk, total_arity) temporary.
    flat_len = max(len(h._flat), 1)
    chunk = max(1, int(4_000_000 // flat_len))
    for lo_i in range(0, len(xs), chunk):
        block = xs[lo_i:lo_i + chunk][:, h._flat]
        hi = np.maximum.reduceat(block, h._offsets[:-1], axis=1)
        lo = np.minimum.reduceat(block, h._offsets[:-1], axis=1)
        gaps = hi - lo
        out[lo_i:lo_i + chunk] = (gaps * gaps) @ h._weights
    return out


def cut_value(h: Hypergraph, s: Iterable[int]) -> float:
    """Total weight of hyperedges with a vertex on each side of the cut."""
    side = set(s)
    for v in side:
        if not (0 <= v < h.n):
            raise ValueError(f"vertex {v} out of range for n={h.n}")
    total = []
    for e in h.edges():
        inside = sum(1 for v in e.vertices if v in side)
        if 0 < inside < e.arity:
            total.append(e.weight)
    return float(math.fsum(total))


def arity_bucket_base(arity: int) -> int:
    """Power-of-two base r with arity in [r, 2r)."""
    if arity < 1:
        raise ValueError("arity must be >= 1")
    return 1 << (arity.bit_length() - 1)


def weight_class(weight: float) -> int:
    """Class index j with weight in [2^j, 2^(j+1))."""
    if not weight > 0:
        raise ValueError("weight must be positive")
    return math.floor(math.log2(weight))


@dataclass(frozen=True)
class ArityBucket:
    """Hyperedge ids whose arity lies in [r, 2r)."""

    r: int
    edge_ids: tuple[int, ...]


def bucket_by_arity_and_weight(
        h: Hypergraph) -> list[tuple[ArityBucket, int, Hypergraph]]:
    """Partition edges into (arity bucket) x (power-of-two weight class).

    Each sub-hypergraph carries unit weights and is meant to run through the
    unweighted pipeline; kept edges get their recovered weight multiplied by
    the class factor 2^j on reassembly. Bucket keys are sorted (r, j).
    """
    groups: dict[tuple[int, int], list[Hyperedge]] = {}
    for e in h.edges():
        key = (arity_bucket_base(e.arity), weight_class(e.weight))
        groups.setdefault(key, []).append(e)
    out = []
    for (r, j) in sorted(groups):
        members = groups[(r, j)]
        sub = Hypergraph(h.n, (Hyperedge(e.id, e.vertices, 1.0) for e in members))
        out.append((ArityBucket(r, tuple(sorted(e.id for e in members))), j, sub))
    return out


def serialize_hypergraph(h: Hypergraph) -> str:
    lines = [f"H {h.n} {h.num_edges}"]
    for e in h.edges():
        lines.append(f"{e.weight!r} " + " ".join(str(v) for v in e.vertices))
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse the text format; inverse of serialize_hypergraph.

    Format: header ``H <n> <m>`` then m lines ``<weight> <v1> ... <vk>``
    with strictly increasing 0-based vertices. Lines starting with ``#``
    are comments.
    """
    lines = [ln for ln in (raw.strip() for raw in text.splitlines())
             if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty hypergraph file")
    header = lines[0].split()
    if len(header) != 3 or header[0] != "H":
        raise ValueError(f"bad header line: {lines[0]!r}")
    n, m = int(header[1]), int(header[2])
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for eid, ln in enumerate(lines[1:]):
        fields = ln.split()
        if len(fields) < 2:
            raise ValueError(f"malformed edge line: {ln!r}")
        weight = float(fields[0])
        if not weight > 0:
            raise ValueError(f"non-positive weight in line: {ln!r}")
        verts = [int(f) for f in fields[1:]]
        if any(b <= a for a, b in zip(verts, verts[1:])):
            raise ValueError(f"vertices not strictly increasing: {ln!r}")
        if verts[-1] >= n:
            raise ValueError(f"vertex id >= n in line: {ln!r}")
        if verts[0] < 0:
            raise ValueError(f"negative vertex id in line: {ln!r}")
        edges.append(Hyperedge(eid, tuple(verts), weight))
    return Hypergraph(n, edges)


@dataclass(frozen=True)
class StreamOp:
    """One stream line: insert (with edge content) or delete (by id)."""

    insert: bool
    edge: Hyperedge | None = None
    delete_id: int | None = None


def parse_stream(text: str) -> tuple[int, list[StreamOp]]:
    """Parse the stream format: header ``S <n>``, then +/- lines.

    Insert ids are assigned sequentially from 0 in stream order.
    """
    lines = [ln for ln in (raw.strip() for raw in text.splitlines())
             if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty stream file")
    header = lines[0].split()
    if len(header) != 2 or header[0] != "S":
        raise ValueError(f"bad stream header: {lines[0]!r}")
    n = int(header[1])
    ops = []
    next_id = 0
    for ln in lines[1:]:
        fields = ln.split()
        if fields[0] == "+":
            if len(fields) < 3:
                raise ValueError(f"malformed insert line: {ln!r}")
            weight = float(fields[1])
            verts = tuple(int(f) for f in fields[2:])
            if any(b <= a for a, b in zip(verts, verts[1:])):
                raise ValueError(f"vertices not strictly increasing: {ln!r}")
            if verts[-1] >= n or verts[0] < 0:
                raise ValueError(f"vertex id out of range: {ln!r}")
            ops.append(StreamOp(True, edge=Hyperedge(next_id, verts, weight)))
            next_id += 1
        elif fields[0] == "-":
            if len(fields) != 2:
                raise ValueError(f"malformed delete line: {ln!r}")
            ops.append(StreamOp(False, delete_id=int(fields[1])))
        else:
            raise ValueError(f"unknown stream op: {ln!r}")
    return n, ops


def serialize_stream(n: int, ops: list[StreamOp]) -> str:
    lines = [f"S {n}"]
    for op in ops:
        if op.insert:
            e = op.edge
            lines.append(f"+ {e.weight!r} " + " ".join(str(v) for v in e.vertices))
        else:
            lines.append(f"- {op.delete_id}")
    return "\n".join(lines) + "\n"


def gen_random_hypergraph(n: int, m: int, arity_lo: int, arity_hi: int,
                          seed: int) -> Hypergraph:
    """m uniform random hyperedges with arity uniform in [arity_lo, arity_hi]."""
    if not (2 <= arity_lo <= arity_hi <= n):
        raise ValueError(
            f"need 2 <= {arity_lo} <= {arity_hi} <= n={n}")
    rng = substream(seed, "gen_random", n, m, arity_lo, arity_hi)
    edges = []
    for eid in range(m):
        k = int(rng.integers(arity_lo, arity_hi + 1))
        verts = np.sort(rng.choice(n, size=k, replace=False))
        edges.append(Hyperedge(eid, tuple(int(v) for v in verts), 1.0))
    return Hypergraph(n, edges)


def gen_online_lower_bound(n: int, k: int, seed: int,
                           multiplicity: Sequence[int] | None = None,
                           ) -> tuple[int, list[StreamOp]]:
    """Adversarial insert-only stream that forces online retention per round.

    2n vertices, left half L = [0, n) and right half R = [n, 2n). Each round
    j in [1, k] draws a fresh random bipartition of L and R; every left
    vertex emits ``multiplicity[j-1]`` hyperedges into its matched right
    part, each consisting of the left vertex plus a random n/4-subset of
    that part. Returns (vertex_count, insert stream).
    """
    if n % 2 != 0:
        raise ValueError("n must be even")
    if k > n // 10:
        raise ValueError("k must be at most n/10")
    if multiplicity is None:
        multiplicity = [2 ** j for j in range(k)]
    if len(multiplicity) != k:
        raise ValueError("need one multiplicity per round")
    rng = substream(seed, "gen_lower_bound", n, k)
    quarter = n // 4
    ops = []
    next_id = 0
    for j in range(k):
        left_mask = rng.random(n) < 0.5
        right_mask = rng.random(n) < 0.5
        parts = {
            True: [n + v for v in range(n) if right_mask[v]],
            False: [n + v for v in range(n) if not right_mask[v]],
        }
        for u in range(n):
            part = parts[bool(left_mask[u])]
            if len(part) < quarter:
                part = parts[not bool(left_mask[u])]
            for _ in range(multiplicity[j]):
                sub = rng.choice(len(part), size=quarter, replace=False)
                verts = tuple(sorted([u] + [part[i] for i in sub]))
                ops.append(StreamOp(True, edge=Hyperedge(next_id, verts, 1.0)))
                next_id += 1
    return 2 * n, ops
