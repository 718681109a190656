"""Effective resistances of multi-graphs: exact oracle, approximate path,
and resistance-proportional edge sampling.

Exact mode inverts each connected component's dense Laplacian through an
eigendecomposition with the null space projected out; it is gated to
components of at most ``DENSE_VERTEX_LIMIT`` vertices. The approximate path
sketches the incidence structure with random signs and runs one conjugate
gradient solve per projection dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .multigraph import MultiEdge, MultiGraph

DENSE_VERTEX_LIMIT = 4096

INFINITE = math.inf


class CapacityError(RuntimeError):
    """A component is too large for the dense exact path."""


class SolverError(RuntimeError):
    """Conjugate gradient failed to reach the residual target."""


def connected_components(g: MultiGraph) -> np.ndarray:
    """Component id per vertex (isolated vertices get their own)."""
    parent = np.arange(g.n, dtype=np.int64)

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for u, v in zip(g.us, g.vs):
        ru, rv = find(int(u)), find(int(v))
        if ru != rv:
            parent[ru] = rv
    comp = np.array([find(int(x)) for x in range(g.n)], dtype=np.int64)
    _, relabeled = np.unique(comp, return_inverse=True)
    return relabeled


def _slot_arrays(g: MultiGraph) -> tuple[np.ndarray, np.ndarray, np.ndarray,
                                         np.ndarray]:
    """Distinct (u, v) slots, their conductances, and per-edge slot index."""
    if g.num_edges == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, np.zeros(0), empty
    keys = g.us * g.n + g.vs
    slots, inverse, counts = np.unique(keys, return_inverse=True,
                                       return_counts=True)
    return (slots // g.n, slots % g.n, counts.astype(np.float64), inverse)


def _component_pinv(su: np.ndarray, sv: np.ndarray, cond: np.ndarray,
                    verts: np.ndarray) -> np.ndarray:
    """Pseudo-inverse of the Laplacian restricted to one component."""
    local = {int(v): i for i, v in enumerate(verts)}
    k = len(verts)
    lap = np.zeros((k, k))
    for u, v, c in zip(su, sv, cond):
        a, b = local[int(u)], local[int(v)]
        lap[a, b] -= c
        lap[b, a] -= c
        lap[a, a] += c
        lap[b, b] += c
    vals, vecs = np.linalg.eigh(lap)
    tol = max(k, 1) * np.finfo(np.float64).eps * max(vals[-1], 1.0)
    inv = np.where(vals > tol, 1.0 / np.where(vals > tol, vals, 1.0), 0.0)
    return (vecs * inv) @ vecs.T


@dataclass
class ResistanceReport:
    """Per-edge effective resistances aligned with the graph's edge order."""

    values: np.ndarray
    component: np.ndarray          # component id per vertex
    exact: bool
    delta: float = 0.0
    meta: dict = field(default_factory=dict)

    def foster_sum(self) -> float:
        return float(math.fsum(self.values))


class _ExactSolver:
    """Shared exact-resistance machinery over one multigraph."""

    def __init__(self, g: MultiGraph, vertex_limit: int = DENSE_VERTEX_LIMIT):
        self.g = g
        self.comp = connected_components(g)
        self.su, self.sv, self.cond, self.slot_of_edge = _slot_arrays(g)
        self._pinvs: dict[int, tuple[dict[int, int], np.ndarray]] = {}
        self.vertex_limit = vertex_limit

    def _pinv_for(self, cid: int) -> tuple[dict[int, int], np.ndarray]:
        if cid not in self._pinvs:
            verts = np.flatnonzero(self.comp == cid)
            if len(verts) > self.vertex_limit:
                raise CapacityError(
                    f"component with {len(verts)} vertices exceeds the dense "
                    f"limit of {self.vertex_limit}")
            in_comp = self.comp[self.su] == cid
            pinv = _component_pinv(self.su[in_comp], self.sv[in_comp],
                                   self.cond[in_comp], verts)
            self._pinvs[cid] = ({int(v): i for i, v in enumerate(verts)}, pinv)
        return self._pinvs[cid]

    def pair(self, u: int, v: int) -> float:
        if self.comp[u] != self.comp[v]:
            return INFINITE
        local, pinv = self._pinv_for(int(self.comp[u]))
        a, b = local[u], local[v]
        return float(pinv[a, a] + pinv[b, b] - 2.0 * pinv[a, b])

    def all_edges(self) -> np.ndarray:
        slot_r = np.empty(len(self.su))
        for i, (u, v) in enumerate(zip(self.su, self.sv)):
            slot_r[i] = self.pair(int(u), int(v))
        return slot_r[self.slot_of_edge]


def effective_resistance_exact(g: MultiGraph,
                               pairs: list[tuple[int, int]],
                               vertex_limit: int = DENSE_VERTEX_LIMIT,
                               ) -> list[float]:
    """Exact R(u, v) per pair; inf signals a cross-component pair."""
    solver = _ExactSolver(g, vertex_limit)
    return [solver.pair(u, v) for (u, v) in pairs]


def effective_resistance_all_exact(g: MultiGraph,
                                   vertex_limit: int = DENSE_VERTEX_LIMIT,
                                   ) -> ResistanceReport:
    solver = _ExactSolver(g, vertex_limit)
    return ResistanceReport(values=solver.all_edges(), component=solver.comp,
                            exact=True)


def _laplacian_matvec(n, su, sv, cond, deg):
    def matvec(x):
        y = deg * x
        np.subtract.at(y, su, cond * x[sv])
        np.subtract.at(y, sv, cond * x[su])
        return y
    return matvec


def _cg(matvec, b, tol, max_iter):
    x = np.zeros_like(b)
    r = b.copy()
    p = r.copy()
    rs = float(r @ r)
    bnorm = math.sqrt(float(b @ b))
    if bnorm == 0:
        return x
    for _ in range(max_iter):
        ap = matvec(p)
        denom = float(p @ ap)
        if denom <= 0:
            break
        alpha = rs / denom
        x += alpha * p
        r -= alpha * ap
        rs_new = float(r @ r)
        if math.sqrt(rs_new) <= tol * bnorm:
            return x
        p = r + (rs_new / rs) * p
        rs = rs_new
    if math.sqrt(rs) > tol * bnorm:
        raise SolverError(
            f"CG residual {math.sqrt(rs) / bnorm:.3e} above {tol:.1e} "
            f"after {max_iter} iterations")
    return x


def effective_resistance_all_approx(g: MultiGraph, delta: float,
                                    seed: int = 0,
                                    cg_tol: float = 1e-8,
                                    max_iter: int | None = None,
                                    ) -> ResistanceReport:
    """Every edge's R within (1 +- delta) via random projections.

    Projection dimension is ceil(24 ln n / delta^2); each dimension costs
    one CG Laplacian solve at relative residual ``cg_tol``.
    """
    if not (0.0 < delta < 1.0):
        raise ValueError("delta must be in (0, 1)")
    comp = connected_components(g)
    su, sv, cond, slot_of_edge = _slot_arrays(g)
    n = g.n
    if g.num_edges == 0:
        return ResistanceReport(values=np.zeros(0), component=comp,
                                exact=False, delta=delta)
    q = int(math.ceil(24.0 * math.log(max(n, 2)) / (delta * delta)))
    if max_iter is None:
        max_iter = 20 * n + 200
    deg = np.zeros(n)
    np.add.at(deg, su, cond)
    np.add.at(deg, sv, cond)
    matvec = _laplacian_matvec(n, su, sv, cond, deg)
    rng = np.random.default_rng(seed)
    sqrt_c = np.sqrt(cond)
    comp_sizes = np.bincount(comp, minlength=comp.max() + 1 if n else 0)
    slot_r = np.zeros(len(su))
    scale = 1.0 / math.sqrt(q)
    for _ in range(q):
        signs = rng.choice((-scale, scale), size=len(su))
        y = np.zeros(n)
        np.add.at(y, su, sqrt_c * signs)
        np.subtract.at(y, sv, sqrt_c * signs)
        # per-component mean removal keeps the RHS in the Laplacian's range
        means = np.bincount(comp, weights=y) / np.maximum(comp_sizes, 1)
        y -= means[comp]
        z = _cg(matvec, y, cg_tol, max_iter)
        dz = z[su] - z[sv]
        slot_r += dz * dz
    return ResistanceReport(values=slot_r[slot_of_edge], component=comp,
                            exact=False, delta=delta,
                            meta={"projection_dims": q})


def edge_resistances(g: MultiGraph,
                     vertex_limit: int = DENSE_VERTEX_LIMIT,
                     approx_delta: float = 0.1,
                     seed: int = 0) -> tuple[np.ndarray, bool]:
    """Per-edge R; exact when every component fits the dense gate.

    Returns (values, exact_flag).
    """
    comp = connected_components(g)
    if g.n == 0 or g.num_edges == 0:
        return np.zeros(g.num_edges), True
    largest = int(np.bincount(comp).max())
    if largest <= vertex_limit:
        return effective_resistance_all_exact(g, vertex_limit).values, True
    return effective_resistance_all_approx(g, approx_delta, seed).values, False


def er_sample(g: MultiGraph, lam: float, rng: np.random.Generator,
              resistances: np.ndarray | None = None,
              vertex_limit: int = DENSE_VERTEX_LIMIT) -> set[MultiEdge]:
    """Keep each multi-edge independently with probability min(1, lam * R).

    Infinite resistance keeps with probability one. Parallel copies share a
    slot resistance but are sampled as individual edges.
    """
    idx = er_sample_indices(g, lam, rng, resistances, vertex_limit)
    return {g.edge(int(i)) for i in idx}


def er_sample_indices(g: MultiGraph, lam: float, rng: np.random.Generator,
                      resistances: np.ndarray | None = None,
                      vertex_limit: int = DENSE_VERTEX_LIMIT) -> np.ndarray:
    if lam < 0:
        raise ValueError("oversampling rate must be non-negative")
    if g.num_edges == 0:
        return np.zeros(0, dtype=np.int64)
    if resistances is None:
        resistances, _ = edge_resistances(g, vertex_limit)
    probs = np.where(np.isinf(resistances), 1.0,
                     np.minimum(1.0, lam * resistances))
    keep = rng.random(g.num_edges) < probs
    return np.flatnonzero(keep)
