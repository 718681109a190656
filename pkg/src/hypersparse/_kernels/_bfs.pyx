# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Depth-limited BFS over a mutable simple graph, as a C-backed core.

This is the hot loop of every spanner membership test: the graph is tiny
but queried millions of times, so adjacency lives in flat C arrays with a
free-list arena for half-edge pairs and a stamp array instead of per-query
clearing.
"""

from libc.stdlib cimport malloc, realloc, free


cdef class GraphCore:
    cdef int n
    cdef int _edge_count
    cdef long _stamp
    cdef int _cap            # half-edge arena capacity (always even)
    cdef int _free_head      # free list of even half-edge ids, -1 if empty
    cdef int _arena_top      # first never-used half-edge id (even)
    cdef int* head           # per-vertex first half-edge, -1 terminated
    cdef int* nxt
    cdef int* prv
    cdef int* to
    cdef long* seen          # BFS stamp per vertex
    cdef int* dist
    cdef int* queue

    def __cinit__(self, int n):
        cdef int i
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        self._edge_count = 0
        self._stamp = 0
        self._cap = 64
        self._free_head = -1
        self._arena_top = 0
        self.head = <int*>malloc(n * sizeof(int))
        self.seen = <long*>malloc(n * sizeof(long))
        self.dist = <int*>malloc(n * sizeof(int))
        self.queue = <int*>malloc(n * sizeof(int))
        self.nxt = <int*>malloc(self._cap * sizeof(int))
        self.prv = <int*>malloc(self._cap * sizeof(int))
        self.to = <int*>malloc(self._cap * sizeof(int))
        if (n and (self.head == NULL or self.seen == NULL or
                   self.dist == NULL or self.queue == NULL)) or \
           self.nxt == NULL or self.prv == NULL or self.to == NULL:
            raise MemoryError()
        for i in range(n):
            self.head[i] = -1
            self.seen[i] = 0

    def __dealloc__(self):
        free(self.head)
        free(self.seen)
        free(self.dist)
        free(self.queue)
        free(self.nxt)
        free(self.prv)
        free(self.to)

    cdef int _alloc_pair(self) except -1:
        """Return an even half-edge id h; h and h+1 form the pair."""
        cdef int h
        cdef int newcap
        if self._free_head >= 0:
            h = self._free_head
            self._free_head = self.nxt[h]
            return h
        if self._arena_top + 1 >= self._cap:
            newcap = self._cap * 2
            self.nxt = <int*>realloc(self.nxt, newcap * sizeof(int))
            self.prv = <int*>realloc(self.prv, newcap * sizeof(int))
            self.to = <int*>realloc(self.to, newcap * sizeof(int))
            if self.nxt == NULL or self.prv == NULL or self.to == NULL:
                raise MemoryError()
            self._cap = newcap
        h = self._arena_top
        self._arena_top += 2
        return h

    cdef void _link(self, int u, int h):
        self.nxt[h] = self.head[u]
        self.prv[h] = -1
        if self.head[u] >= 0:
            self.prv[self.head[u]] = h
        self.head[u] = h

    cdef void _unlink(self, int u, int h):
        if self.prv[h] >= 0:
            self.nxt[self.prv[h]] = self.nxt[h]
        else:
            self.head[u] = self.nxt[h]
        if self.nxt[h] >= 0:
            self.prv[self.nxt[h]] = self.prv[h]

    @property
    def n_vertices(self):
        return self.n

    @property
    def edge_count(self):
        return self._edge_count

    def add_edge(self, int u, int v):
        cdef int h
        if u == v:
            raise ValueError("self-loops are not allowed")
        h = self._alloc_pair()
        self.to[h] = v
        self.to[h + 1] = u
        self._link(u, h)
        self._link(v, h + 1)
        self._edge_count += 1

    def remove_edge(self, int u, int v):
        cdef int h = self.head[u]
        cdef int even
        while h >= 0:
            if self.to[h] == v:
                even = h & ~1
                self._unlink(u, h)
                self._unlink(v, h ^ 1)
                self.nxt[even] = self._free_head
                self._free_head = even
                self._edge_count -= 1
                return
            h = self.nxt[h]
        raise KeyError((u, v))

    def has_edge(self, int u, int v):
        cdef int h = self.head[u]
        while h >= 0:
            if self.to[h] == v:
                return True
            h = self.nxt[h]
        return False

    def degree(self, int u):
        cdef int d = 0
        cdef int h = self.head[u]
        while h >= 0:
            d += 1
            h = self.nxt[h]
        return d

    def neighbors(self, int u):
        out = []
        cdef int h = self.head[u]
        while h >= 0:
            out.append(self.to[h])
            h = self.nxt[h]
        return out

    def has_path_within(self, int u, int v, int max_depth):
        """True iff v is reachable from u using at most max_depth edges."""
        cdef int qhead = 0, qtail = 0
        cdef int x, d, h, y
        cdef long stamp
        if u == v:
            return True
        if max_depth <= 0:
            return False
        self._stamp += 1
        stamp = self._stamp
        self.seen[u] = stamp
        self.dist[u] = 0
        self.queue[qtail] = u
        qtail += 1
        while qhead < qtail:
            x = self.queue[qhead]
            qhead += 1
            d = self.dist[x]
            h = self.head[x]
            while h >= 0:
                y = self.to[h]
                if self.seen[y] != stamp:
                    if y == v:
                        return True
                    if d + 1 < max_depth:
                        self.seen[y] = stamp
                        self.dist[y] = d + 1
                        self.queue[qtail] = y
                        qtail += 1
                h = self.nxt[h]
        return False

    def edges(self):
        """Sorted list of (u, v) pairs with u < v."""
        out = []
        cdef int u, h
        for u in range(self.n):
            h = self.head[u]
            while h >= 0:
                if u < self.to[h]:
                    out.append((u, self.to[h]))
                h = self.nxt[h]
        out.sort()
        return out
