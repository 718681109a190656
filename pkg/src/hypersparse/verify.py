"""Verification oracles: spectral battery, exhaustive cuts, collective energy.

Verification randomness comes from a dedicated stream, never shared with
algorithm randomness.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .hypergraph import Hypergraph, quadratic_form_batch
from .rng import substream

EXHAUSTIVE_CUT_LIMIT = 12


@dataclass
class VerificationReport:
    name: str
    instance: str
    max_rel_error: float
    tolerance: float
    passed: bool
    seeds: dict = field(default_factory=dict)
    wall_time: float = 0.0
    details: dict = field(default_factory=dict)

    def to_record(self) -> dict:
        return {
            "name": self.name,
            "instance": self.instance,
            "max_rel_error": self.max_rel_error,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "seeds": self.seeds,
            "wall_time": self.wall_time,
            "details": self.details,
        }


def _battery_vectors(n: int, trials: int, seed: int,
                     exhaustive: bool) -> list[tuple[str, np.ndarray]]:
    rng = substream(seed, "verify-battery")
    groups: list[tuple[str, np.ndarray]] = []
    if trials > 0:
        groups.append(("gaussian", rng.standard_normal((trials, n))))
    eye = np.eye(n)
    groups.append(("singleton-cuts", eye))
    groups.append(("random-01", (rng.random((1000, n)) < 0.5).astype(float)))
    if exhaustive and n <= EXHAUSTIVE_CUT_LIMIT and n >= 2:
        count = 2 ** n - 2
        bits = ((np.arange(1, count + 1)[:, None] >> np.arange(n)) & 1)
        groups.append(("exhaustive-cuts", bits.astype(float)))
    return groups


def max_relative_error(h: Hypergraph, h_sparse: Hypergraph,
                       vectors: np.ndarray) -> float:
    """max |Q_sparse(x)/Q(x) - 1| over rows; inf when Q=0 but Q_sparse!=0."""
    q = quadratic_form_batch(h, vectors)
    qs = quadratic_form_batch(h_sparse, vectors)
    worst = 0.0
    zero = q <= 0.0
    if np.any(zero & (qs > 0.0)):
        return math.inf
    live = ~zero
    if live.any():
        rel = np.abs(qs[live] / q[live] - 1.0)
        worst = float(rel.max())
    return worst


def verify_spectral(h: Hypergraph, h_sparse: Hypergraph, eps: float,
                    trials: int = 200, seed: int = 0,
                    exhaustive: bool = True,
                    name: str = "spectral-battery") -> VerificationReport:
    """Spectral battery: Gaussians, singleton cuts, random 0/1 vectors, and
    all 2^n - 2 cut indicators when n <= 12."""
    if h.n != h_sparse.n:
        raise ValueError("vertex counts differ")
    t0 = time.perf_counter()
    worst = 0.0
    details = {}
    for label, block in _battery_vectors(h.n, trials, seed, exhaustive):
        err = max_relative_error(h, h_sparse, block)
        details[label] = err
        worst = max(worst, err)
    return VerificationReport(
        name=name,
        instance=f"n={h.n} m={h.num_edges} -> {h_sparse.num_edges}",
        max_rel_error=worst,
        tolerance=eps,
        passed=worst <= eps,
        seeds={"verify_seed": seed},
        wall_time=time.perf_counter() - t0,
        details=details)


def collective_energy(h: Hypergraph, vectors: list[np.ndarray] | np.ndarray,
                      ) -> float:
    """Sum over edges of the max pair of summed squared potential gaps.

    With a single vector this equals the quadratic form; on the indicator
    vectors of a k-way partition it equals exactly twice the k-cut.
    """
    xs = np.asarray(vectors, dtype=np.float64)
    if xs.ndim == 1:
        xs = xs[None, :]
    if xs.shape[1] != h.n:
        raise ValueError(f"potential vectors must have length {h.n}")
    terms = []
    for e in h.edges():
        cols = xs[:, e.vertices]
        k = cols.shape[1]
        if k < 2:
            continue
        best = 0.0
        for a in range(k):
            diff = cols[:, a + 1:] - cols[:, a:a + 1]
            if diff.size:
                best = max(best, float((diff * diff).sum(axis=0).max()))
        terms.append(e.weight * best)
    return float(math.fsum(terms))
