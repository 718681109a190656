"""Greedy girth-bounded spanners and disjoint spanner bundles.

A spanner accepts an edge only when its endpoints are not already connected
by a path of at most ``stretch`` edges, so it never holds a cycle of length
<= stretch + 1. A bundle offers each edge to its spanners in order and
keeps it in the first acceptor; an edge rejected by all ell spanners has
ell edge-disjoint short paths between its endpoints, hence effective
resistance at most stretch / ell.
"""

from __future__ import annotations

import math

from ._kernels import GraphCore


def stretch_for(n: int) -> int:
    """Stretch threshold ceil(log2 n), floored at 2."""
    return max(2, int(math.ceil(math.log2(max(n, 2)))))


class Spanner:
    """Insert-only greedy spanner with exact truncated-BFS membership tests."""

    __slots__ = ("n", "stretch", "core")

    def __init__(self, n: int, stretch: int):
        if stretch < 1:
            raise ValueError("stretch must be >= 1")
        self.n = n
        self.stretch = stretch
        self.core = GraphCore(n)

    @property
    def edge_count(self) -> int:
        return self.core.edge_count

    def try_insert(self, u: int, v: int) -> bool:
        if u == v:
            raise ValueError("self-loops are not allowed")
        if self.core.has_path_within(u, v, self.stretch):
            return False
        self.core.add_edge(u, v)
        return True

    def remove_edge(self, u: int, v: int) -> None:
        self.core.remove_edge(u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return self.core.has_edge(u, v)

    def edges(self) -> list[tuple[int, int]]:
        return self.core.edges()

    def neighbors(self, u: int) -> list[int]:
        return self.core.neighbors(u)

    def has_short_cycle(self) -> bool:
        """Audit: any cycle of length <= stretch?

        A cycle of length <= stretch through edge (u, v) exists iff u and v
        stay connected within stretch - 1 edges after removing the edge.
        """
        for (u, v) in self.edges():
            self.core.remove_edge(u, v)
            short = self.core.has_path_within(u, v, self.stretch - 1)
            self.core.add_edge(u, v)
            if short:
                return True
        return False


def spanner_try_insert(t: Spanner, u: int, v: int) -> bool:
    """Offer (u, v); accepted iff no path of length <= stretch exists."""
    return t.try_insert(u, v)


class SpannerBundle:
    """Up to ell disjoint spanners with per-slot occupancy bookkeeping.

    Spanners are materialized lazily: T_k is only created once some offer
    reaches it, which preserves the disjoint semantics (an offer reaches
    T_k only after T_1 .. T_{k-1} rejected it).
    """

    __slots__ = ("n", "ell", "stretch", "spanners", "occupancy")

    def __init__(self, n: int, ell: int, stretch: int):
        if ell < 1:
            raise ValueError("bundle size must be >= 1")
        self.n = n
        self.ell = ell
        self.stretch = stretch
        self.spanners: list[Spanner] = []
        self.occupancy: dict[tuple[int, int], list[int]] = {}

    def _slot(self, u: int, v: int) -> tuple[int, int]:
        return (u, v) if u < v else (v, u)

    def try_insert(self, u: int, v: int) -> tuple[bool, int | None]:
        """Offer to T_1, T_2, ... in order; land in the first acceptor."""
        for k in range(self.ell):
            if k == len(self.spanners):
                self.spanners.append(Spanner(self.n, self.stretch))
            if self.spanners[k].try_insert(u, v):
                self.occupancy.setdefault(self._slot(u, v), []).append(k)
                return True, k
        return False, None

    def try_insert_at(self, u: int, v: int, start: int) -> tuple[bool, int | None]:
        """Offer starting from spanner index ``start`` (0-based)."""
        for k in range(start, self.ell):
            if k == len(self.spanners):
                self.spanners.append(Spanner(self.n, self.stretch))
            if self.spanners[k].try_insert(u, v):
                self.occupancy.setdefault(self._slot(u, v), []).append(k)
                return True, k
        return False, None

    def remove(self, u: int, v: int, index: int) -> None:
        """Remove the slot copy held by spanner ``index``."""
        slot = self._slot(u, v)
        holders = self.occupancy.get(slot, [])
        if index not in holders:
            raise KeyError(f"slot {slot} not held by spanner {index}")
        holders.remove(index)
        if not holders:
            self.occupancy.pop(slot, None)
        self.spanners[index].remove_edge(u, v)

    def slot_spanners(self, u: int, v: int) -> list[int]:
        return sorted(self.occupancy.get(self._slot(u, v), []))

    def contains_slot(self, u: int, v: int) -> bool:
        return self._slot(u, v) in self.occupancy

    @property
    def total_edges(self) -> int:
        return sum(t.edge_count for t in self.spanners)

    def audit_disjoint(self) -> bool:
        """Each (slot, copy) held by at most one spanner: occupancy lists
        must be duplicate-free and match the spanners' actual edges."""
        for slot, holders in self.occupancy.items():
            if len(holders) != len(set(holders)):
                return False
            for k in holders:
                if not self.spanners[k].has_edge(*slot):
                    return False
        for k, t in enumerate(self.spanners):
            for (u, v) in t.edges():
                if k not in self.occupancy.get((u, v), []):
                    return False
        return True


def bundle_try_insert(bundle: SpannerBundle, u: int, v: int,
                      ) -> tuple[bool, int | None]:
    """Offer a multi-edge slot copy to the bundle."""
    return bundle.try_insert(u, v)


def bundle_size(n_proj: int, eps: float, c_ell: float = 1.0,
                cap: int = 4096) -> int:
    """Desk-scale bundle size: c_ell * stretch / (4 eps^2), at least 2.

    The asymptotic choice (log^2 n log^2 m / eps'^2 with a large constant)
    saturates every desk instance; this keeps the recovery threshold
    stretch/ell proportional to eps^2 instead.
    """
    t = stretch_for(n_proj)
    return max(2, min(cap, int(round(c_ell * t / (4.0 * eps * eps)))))
