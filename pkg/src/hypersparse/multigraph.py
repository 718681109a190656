"""Labeled multi-graphs (clique expansions) and oblivious vertex sampling."""

from __future__ import annotations

from typing import Iterable, NamedTuple

import numpy as np

from .hypergraph import Hyperedge, Hypergraph


class MultiEdge(NamedTuple):
    u: int
    v: int
    label: int
    copy_index: int


class MultiGraph:
    """Unit-weight multi-graph; parallel edges allowed, self-loops not.

    Edges are stored as flat arrays (us, vs, labels, copies) with us < vs.
    Immutable after construction.
    """

    __slots__ = ("n", "us", "vs", "labels", "copies")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, int]] = ()):
        self.n = n
        us, vs, labels = [], [], []
        copy_count: dict[tuple[int, int, int], int] = {}
        copies = []
        for (u, v, label) in edges:
            if u == v:
                raise ValueError("self-loops are not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"vertex out of range: ({u}, {v})")
            if u > v:
                u, v = v, u
            us.append(u)
            vs.append(v)
            labels.append(label)
            key = (u, v, label)
            copies.append(copy_count.get(key, 0))
            copy_count[key] = copies[-1] + 1
        self.us = np.asarray(us, dtype=np.int64)
        self.vs = np.asarray(vs, dtype=np.int64)
        self.labels = np.asarray(labels, dtype=np.int64)
        self.copies = np.asarray(copies, dtype=np.int64)

    @classmethod
    def from_arrays(cls, n: int, us: np.ndarray, vs: np.ndarray,
                    labels: np.ndarray) -> "MultiGraph":
        g = cls.__new__(cls)
        g.n = n
        lo = np.minimum(us, vs).astype(np.int64)
        hi = np.maximum(us, vs).astype(np.int64)
        if np.any(lo == hi):
            raise ValueError("self-loops are not allowed")
        g.us = lo
        g.vs = hi
        g.labels = np.asarray(labels, dtype=np.int64)
        # copy indices per (u, v, label), assigned in array order
        m = len(lo)
        copies = np.zeros(m, dtype=np.int64)
        if m:
            order = np.lexsort((g.labels, g.vs, g.us))
            su, sv, sl = g.us[order], g.vs[order], g.labels[order]
            new_group = np.ones(m, dtype=bool)
            new_group[1:] = ((su[1:] != su[:-1]) | (sv[1:] != sv[:-1])
                             | (sl[1:] != sl[:-1]))
            idx = np.arange(m, dtype=np.int64)
            group_start = np.maximum.accumulate(np.where(new_group, idx, 0))
            copies[order] = idx - group_start
        g.copies = copies
        return g

    @property
    def num_edges(self) -> int:
        return len(self.us)

    def edge(self, i: int) -> MultiEdge:
        return MultiEdge(int(self.us[i]), int(self.vs[i]),
                         int(self.labels[i]), int(self.copies[i]))

    def edge_list(self) -> list[MultiEdge]:
        return [self.edge(i) for i in range(self.num_edges)]


def clique_expand(h: Hypergraph) -> MultiGraph:
    """Replace every hyperedge with a unit-weight clique on its vertices.

    An arity-k edge contributes C(k, 2) multi-edges labeled with its id;
    arity <= 1 contributes nothing.
    """
    us, vs, labels = [], [], []
    for e in h.edges():
        verts = e.vertices
        k = len(verts)
        for a in range(k):
            for b in range(a + 1, k):
                us.append(verts[a])
                vs.append(verts[b])
                labels.append(e.id)
    return MultiGraph.from_arrays(
        h.n,
        np.asarray(us, dtype=np.int64),
        np.asarray(vs, dtype=np.int64),
        np.asarray(labels, dtype=np.int64))


def vertex_sample(h: Hypergraph, p: float, rng: np.random.Generator,
                  ) -> tuple[np.ndarray, Hypergraph]:
    """Keep each vertex independently with probability p and project.

    Returns (kept vertex ids, projected hypergraph). Projected edges keep
    their original ids and weights; empty intersections are dropped. The
    projected hypergraph lives on the same 0..n-1 id space.
    """
    if not (0.0 <= p <= 1.0):
        raise ValueError("sampling rate must be in [0, 1]")
    mask = rng.random(h.n) < p
    kept = np.flatnonzero(mask)
    edges = []
    for e in h.edges():
        proj = tuple(v for v in e.vertices if mask[v])
        if proj:
            edges.append(Hyperedge(e.id, proj, e.weight))
    return kept, Hypergraph(h.n, edges)
