"""Pure-Python twin of the compiled BFS core.

Same observable behaviour as ``_bfs.GraphCore``; used when the extension
is not built.
"""

from collections import deque


class GraphCore:
    __slots__ = ("n", "_adj", "_edge_count", "_seen", "_stamp")

    def __init__(self, n):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        self._adj = [set() for _ in range(n)]
        self._edge_count = 0
        self._seen = [0] * n
        self._stamp = 0

    @property
    def n_vertices(self):
        return self.n

    @property
    def edge_count(self):
        return self._edge_count

    def add_edge(self, u, v):
        if u == v:
            raise ValueError("self-loops are not allowed")
        self._adj[u].add(v)
        self._adj[v].add(u)
        self._edge_count += 1

    def remove_edge(self, u, v):
        if v not in self._adj[u]:
            raise KeyError((u, v))
        self._adj[u].discard(v)
        self._adj[v].discard(u)
        self._edge_count -= 1

    def has_edge(self, u, v):
        return v in self._adj[u]

    def degree(self, u):
        return len(self._adj[u])

    def neighbors(self, u):
        return list(self._adj[u])

    def has_path_within(self, u, v, max_depth):
        """True iff v is reachable from u using at most max_depth edges."""
        if u == v:
            return True
        if max_depth <= 0:
            return False
        self._stamp += 1
        stamp = self._stamp
        seen = self._seen
        adj = self._adj
        seen[u] = stamp
        queue = deque([(u, 0)])
        while queue:
            x, d = queue.popleft()
            nd = d + 1
            for y in adj[x]:
                if seen[y] != stamp:
                    if y == v:
                        return True
                    if nd < max_depth:
                        seen[y] = stamp
                        queue.append((y, nd))
        return False

    def edges(self):
        """Sorted list of (u, v) pairs with u < v."""
        out = []
        for u in range(self.n):
            for v in self._adj[u]:
                if u < v:
                    out.append((u, v))
        out.sort()
        return out
