"""Linear sketches: CountSketch heavy hitters, AMS norm estimation,
geometric-level effective-resistance samplers, and the hypergraph sketch
grid with its recovery loop and the naive single-sampler baseline.

Every sketch is linear with integer cells: sketching a stream of inserts
and deletes that nets to H produces bit-identical counters to sketching H
directly, and sketches with equal seeds and dimensions merge by cell-wise
addition.

The conceptual multi-edge universe (every possible hyperedge content times
every vertex pair inside it) is realized as a 128-bit keyed hash; a side
directory maps live hashes back to hyperedge contents and ids, which also
makes hash collisions detectable.
"""

from __future__ import annotations

import hashlib
import io
import math
import struct
from dataclasses import dataclass, field

import numpy as np

from .hypergraph import Hyperedge, Hypergraph, arity_bucket_base, weight_class
from .rng import derive_seed
from .vs_sparsifier import SparsifierOutput

_MAGIC = b"HSK1"
_VERSION = 1


def _index_bytes(index) -> bytes:
    if isinstance(index, bytes):
        return index
    return int(index).to_bytes(16, "little", signed=False)


def _hash_chunk(seed: int, tag: str, index_bytes: bytes, chunk: int,
                size: int) -> bytes:
    h = hashlib.blake2b(digest_size=size)
    h.update(repr((seed, tag, chunk)).encode())
    h.update(index_bytes)
    return h.digest()


class HeavyHitterSketch:
    """CountSketch: depth rows of signed counters, 100/eta^2 buckets per row."""

    _ROWS_PER_CHUNK = 12

    def __init__(self, eta: float, seed: int, depth: int,
                 width: int | None = None):
        if not (0.0 < eta < 1.0):
            raise ValueError("eta must be in (0, 1)")
        self.eta = eta
        self.seed = seed
        self.depth = depth
        self.width = width if width is not None else int(
            math.ceil(100.0 / (eta * eta)))
        self.cells = np.zeros((self.depth, self.width), dtype=np.int64)
        self._rows_idx = np.arange(self.depth)

    def _rows_for(self, index) -> tuple[np.ndarray, np.ndarray]:
        """Per-row (bucket, sign) for one index."""
        ib = _index_bytes(index)
        buckets = np.empty(self.depth, dtype=np.int64)
        signs = np.empty(self.depth, dtype=np.int64)
        for chunk_start in range(0, self.depth, self._ROWS_PER_CHUNK):
            rows = min(self._ROWS_PER_CHUNK, self.depth - chunk_start)
            digest = _hash_chunk(self.seed, "hh", ib,
                                 chunk_start // self._ROWS_PER_CHUNK,
                                 5 * rows)
            for r in range(rows):
                word = int.from_bytes(digest[5 * r:5 * r + 4], "little")
                buckets[chunk_start + r] = word % self.width
                signs[chunk_start + r] = 1 if digest[5 * r + 4] & 1 else -1
        return buckets, signs

    def update(self, index, delta: int) -> None:
        buckets, signs = self._rows_for(index)
        self.cells[self._rows_idx, buckets] += signs * int(delta)

    def estimate(self, index, cells: np.ndarray | None = None) -> float:
        if cells is None:
            cells = self.cells
        buckets, signs = self._rows_for(index)
        return float(np.median(signs * cells[self._rows_idx, buckets]))

    def row_l2_estimate(self, cells: np.ndarray | None = None) -> float:
        """Norm estimate read off the rows themselves: median row power."""
        if cells is None:
            cells = self.cells
        power = (cells.astype(np.float64) ** 2).sum(axis=1)
        return float(math.sqrt(max(np.median(power), 0.0)))

    def decode(self, l2_estimate: float, candidates,
               cells: np.ndarray | None = None) -> dict:
        """Candidate indices whose median estimate reaches (8/10) * eta * l2,
        with their estimates."""
        bar = 0.8 * self.eta * l2_estimate
        out = {}
        for index in candidates:
            est = self.estimate(index, cells)
            if abs(est) >= bar and est != 0.0:
                out[index] = est
        return out

    def bit_size(self) -> int:
        return self.cells.size * 64


def hh_update(sk: HeavyHitterSketch, index, delta: int) -> None:
    sk.update(index, delta)


def hh_decode(sk: HeavyHitterSketch, l2_estimate: float, candidates) -> dict:
    return sk.decode(l2_estimate, candidates)


class L2Estimator:
    """AMS-style sign sketch; estimate within (1 +- accuracy) whp."""

    def __init__(self, accuracy: float, seed: int, rows: int = 12):
        if not (0.0 < accuracy < 1.0):
            raise ValueError("accuracy must be in (0, 1)")
        self.accuracy = accuracy
        self.seed = seed
        self.rows = rows
        self.width = int(math.ceil(8.0 / (accuracy * accuracy)))
        self.cells = np.zeros((rows, self.width), dtype=np.int64)

    def update(self, index, delta: int) -> None:
        ib = _index_bytes(index)
        for r in range(self.rows):
            digest = _hash_chunk(self.seed, "ams", ib, r, 5)
            word = int.from_bytes(digest[:4], "little")
            sign = 1 if digest[4] & 1 else -1
            self.cells[r, word % self.width] += sign * int(delta)

    def estimate(self) -> float:
        power = (self.cells.astype(np.float64) ** 2).sum(axis=1)
        return float(math.sqrt(max(np.median(power), 0.0)))

    def bit_size(self) -> int:
        return self.cells.size * 64


def sampler_eta(phi: float) -> float:
    """Heavy-hitter accuracy for a sampler with rate parameter phi.

    Smaller eta raises the per-level decodable support (~1.56/eta^2), which
    is how a larger phi buys a higher recovery rate.
    """
    return float(min(0.35, 1.0 / math.sqrt(max(phi, 1.0))))


SAMPLER_WIDTH_FACTOR = 32


def sampler_width(eta: float) -> int:
    """Bucket count per row for sampler-internal sketches. Entries are unit
    counts, so collision noise sqrt(support/width) stays below the 0.5
    rounding margin at support ~ 1.56/eta^2 already with a factor-32 width."""
    return int(math.ceil(SAMPLER_WIDTH_FACTOR / (eta * eta)))


def sampler_depth(n: int, scale: float = 1.5) -> int:
    return max(8, int(round(scale * max(1, math.ceil(math.log2(max(n, 2)))))))


class ERSamplerSketch:
    """Resistance-proportional multi-edge sampler: one heavy-hitter sketch
    per geometric subsampling level of the multi-edge indicator vector.

    Level membership is a pure function of (sampler seed, index): an index
    belongs to levels 0..T where T counts trailing ones of its level hash,
    so level p holds an independent rate-2^-p subsample. Decoding walks
    levels sparsest first, subtracting already-recovered contributions, and
    reports the indices whose residual estimates are heavy.
    """

    def __init__(self, phi: float, seed: int, geo_levels: int, depth: int,
                 eta: float | None = None):
        self.phi = phi
        self.seed = seed
        self.geo_levels = geo_levels
        self.eta = eta if eta is not None else sampler_eta(phi)
        self.depth = depth
        self.levels = [HeavyHitterSketch(self.eta, derive_seed(seed, "lvl", p),
                                         depth, width=sampler_width(self.eta))
                       for p in range(geo_levels)]
        self.width = self.levels[0].width if self.levels else 0

    def level_of(self, index) -> int:
        """Highest level the index belongs to (trailing ones of its hash)."""
        h = derive_seed(self.seed, "geo", int(index))
        t = 0
        while h & 1 and t < self.geo_levels - 1:
            t += 1
            h >>= 1
        return t

    def update(self, index, delta: int) -> None:
        top = self.level_of(index)
        for p in range(top + 1):
            self.levels[p].update(index, delta)

    def decode(self, candidates: dict, recovered: dict | None = None,
               flags: list | None = None) -> set:
        """Iterative recovery over levels, sparsest first.

        candidates: live unrecovered index -> net count.
        recovered: index -> count recovered elsewhere, to subtract.
        Returns the newly recovered indices.
        """
        recovered = dict(recovered or {})
        newly: set = set()
        level_of = {idx: self.level_of(idx) for idx in candidates}
        for idx in recovered:
            level_of[idx] = self.level_of(idx)
        cap = 4.0 * 1.56 / (self.eta * self.eta)
        for p in range(self.geo_levels - 1, -1, -1):
            cand_p = [idx for idx in candidates
                      if level_of[idx] >= p and idx not in newly]
            if not cand_p:
                continue
            sk = self.levels[p]
            cells = sk.cells
            subtract = [(idx, cnt) for idx, cnt in recovered.items()
                        if level_of[idx] >= p]
            subtract += [(idx, candidates[idx]) for idx in newly
                         if level_of[idx] >= p]
            if subtract:
                cells = cells.copy()
                for idx, cnt in subtract:
                    buckets, signs = sk._rows_for(idx)
                    cells[sk._rows_idx, buckets] -= signs * int(cnt)
            l2 = sk.row_l2_estimate(cells)
            if flags is not None and l2 * l2 > cap:
                flags.append(("undecodable-level", p, l2 * l2))
            hits = sk.decode(l2, cand_p, cells)
            for idx, est in hits.items():
                if est >= 0.5:
                    newly.add(idx)
        return newly

    def bit_size(self) -> int:
        return sum(sk.bit_size() for sk in self.levels)


def er_sketch_decode(sampler: ERSamplerSketch, candidates: dict,
                     ) -> tuple[set, list]:
    """Open a sampler: returns (recovered indices, decode flags)."""
    flags: list = []
    rec = sampler.decode(candidates, flags=flags)
    return rec, flags


def slot_index(seed: int, vertices: tuple[int, ...], a: int, b: int) -> int:
    """128-bit keyed universe index of (hyperedge content, pair positions)."""
    h = hashlib.blake2b(digest_size=16)
    h.update(repr((seed, "slot", vertices, a, b)).encode())
    return int.from_bytes(h.digest(), "little")


@dataclass
class DirectoryEntry:
    vertices: tuple[int, ...]
    wclass: int
    ids: set[int] = field(default_factory=set)

    @property
    def count(self) -> int:
        return len(self.ids)


class SketchDirectory:
    """Live hyperedge contents keyed by (vertices, weight class)."""

    def __init__(self):
        self.by_content: dict[tuple, DirectoryEntry] = {}
        self.content_of_id: dict[int, tuple] = {}

    def add(self, e: Hyperedge) -> int:
        if e.id in self.content_of_id:
            raise ValueError(f"hyperedge id {e.id} already live")
        key = (e.vertices, weight_class(e.weight))
        entry = self.by_content.setdefault(
            key, DirectoryEntry(e.vertices, key[1]))
        entry.ids.add(e.id)
        self.content_of_id[e.id] = key
        return entry.count

    def remove(self, eid: int) -> tuple[tuple, int]:
        key = self.content_of_id.pop(eid, None)
        if key is None:
            raise KeyError(f"hyperedge id {eid} not live")
        entry = self.by_content[key]
        entry.ids.discard(eid)
        if not entry.ids:
            del self.by_content[key]
            return key, 0
        return key, entry.count

    def live_ids(self) -> list[int]:
        return sorted(self.content_of_id)


def _pairs(k: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(k) for b in range(a + 1, k)]


@dataclass(frozen=True)
class SketchConfig:
    c_phi: float = 8.0             # sampler rate: c_phi / eps^2
    c_phi_naive: float = 1.0       # naive rate: c_phi_naive * r * log2(n) / eps^2
    c_rounds: float = 1.0          # sampler rounds per bucket: max(1, c_rounds * r)
    depth_scale: float = 1.5
    p_override: float | None = None

    def phi(self, eps: float) -> float:
        return self.c_phi / (eps * eps)

    def phi_naive(self, eps: float, r: int, n: int) -> float:
        return (self.c_phi_naive * r * max(1, math.ceil(math.log2(max(n, 2))))
                / (eps * eps))

    def rounds(self, r: int) -> int:
        return max(1, int(round(self.c_rounds * r)))


class _BucketSketch:
    """Sampler grid for one (arity base, weight class) bucket."""

    def __init__(self, n: int, r: int, wclass: int, m_bound: int, eps: float,
                 config: SketchConfig, seed: int, naive: bool = False):
        self.n = n
        self.r = r
        self.wclass = wclass
        self.m_bound = m_bound
        self.eps = eps
        self.config = config
        self.seed = seed
        self.naive = naive
        self.levels = max(1, int(math.ceil(math.log2(max(m_bound, 2)))) + 1)
        self.rounds = 1 if naive else config.rounds(r)
        self.phi = (config.phi_naive(eps, r, n) if naive
                    else config.phi(eps))
        # geometric levels cover the support: projected cliques stay below
        # m_bound pairs in expectation, the unprojected baseline does not
        support_bound = m_bound * (4 * r * r if naive else 2)
        self.geo = max(4, int(math.ceil(math.log2(max(support_bound, 2)))) + 2)
        self.depth = sampler_depth(n, config.depth_scale)
        self.samplers: dict[tuple[int, int], ERSamplerSketch] = {}
        for i in range(self.levels):
            for j in range(self.rounds):
                self.samplers[(i, j)] = ERSamplerSketch(
                    self.phi, derive_seed(seed, "sampler", i, j), self.geo,
                    self.depth)
        if naive or config.p_override is not None and config.p_override >= 1:
            self.vrate = 1.0
        elif config.p_override is not None:
            self.vrate = config.p_override
        else:
            self.vrate = 1.0 / r
        self._mask_cache: dict[tuple[int, int], np.ndarray] = {}

    def vertex_mask(self, i: int, j: int) -> np.ndarray:
        if self.vrate >= 1.0:
            key = (-1, -1)
        else:
            key = (i, j)
        if key not in self._mask_cache:
            if self.vrate >= 1.0:
                self._mask_cache[key] = np.ones(self.n, dtype=bool)
            else:
                rng = np.random.default_rng(derive_seed(self.seed, "vset",
                                                        i, j))
                self._mask_cache[key] = rng.random(self.n) < self.vrate
        return self._mask_cache[key]

    def alive_at(self, content: tuple[int, ...], level: int) -> bool:
        """Level coins: alive at level iff the first ``level`` coins are
        heads; a pure function of (bucket seed, content)."""
        bits = derive_seed(self.seed, "level-coins", content)
        return (bits & ((1 << level) - 1)) == ((1 << level) - 1)

    def projected_indices(self, content: tuple[int, ...], i: int, j: int,
                          ) -> list[int]:
        mask = self.vertex_mask(i, j)
        pos = [p for p, v in enumerate(content) if mask[v]]
        if len(pos) < 2:
            return []
        return [slot_index(self.seed, content, pos[a], pos[b])
                for (a, b) in _pairs(len(pos))]

    def apply(self, content: tuple[int, ...], delta: int) -> None:
        for i in range(self.levels):
            if not self.alive_at(content, i):
                break
            for j in range(self.rounds):
                for idx in self.projected_indices(content, i, j):
                    self.samplers[(i, j)].update(idx, delta)

    def bit_size(self) -> int:
        return sum(s.bit_size() for s in self.samplers.values())


class HypergraphSketch:
    """Linear sketch of a hypergraph: per-bucket sampler grids plus the
    live-content directory."""

    def __init__(self, n: int, m_bound: int, eps: float, seed: int,
                 config: SketchConfig | None = None, naive: bool = False):
        self.n = n
        self.m_bound = m_bound
        self.eps = eps
        self.seed = seed
        self.config = config or SketchConfig()
        self.naive = naive
        self.buckets: dict[tuple[int, int], _BucketSketch] = {}
        self.directory = SketchDirectory()

    def _bucket(self, r: int, wclass: int) -> _BucketSketch:
        key = (max(r, 2), wclass)
        if key not in self.buckets:
            self.buckets[key] = _BucketSketch(
                self.n, key[0], key[1], self.m_bound, self.eps, self.config,
                derive_seed(self.seed, "bucket", key), naive=self.naive)
        return self.buckets[key]

    def insert(self, e: Hyperedge) -> None:
        if e.vertices[-1] >= self.n:
            raise ValueError("vertex out of range")
        self.directory.add(e)
        if e.arity >= 2:
            self._bucket(arity_bucket_base(e.arity),
                         weight_class(e.weight)).apply(e.vertices, +1)

    def delete(self, eid: int) -> None:
        key = self.directory.content_of_id.get(eid)
        if key is None:
            raise KeyError(f"hyperedge id {eid} not live")
        vertices, wclass = key
        self.directory.remove(eid)
        if len(vertices) >= 2:
            self._bucket(arity_bucket_base(len(vertices)),
                         wclass).apply(vertices, -1)

    # -- recovery ---------------------------------------------------------

    def recover(self) -> tuple[SparsifierOutput, list]:
        out = SparsifierOutput()
        all_flags: list = []
        for key in sorted(self.buckets):
            self._recover_bucket(self.buckets[key], key, out, all_flags)
        out.kept.sort()
        return out, all_flags

    def _recover_bucket(self, bucket: _BucketSketch, key: tuple[int, int],
                        out: SparsifierOutput, all_flags: list) -> None:
        live = [entry for entry in self.directory.by_content.values()
                if len(entry.vertices) >= 2
                and (arity_bucket_base(len(entry.vertices)),
                     entry.wclass) == key]
        live.sort(key=lambda en: en.vertices)
        recovered: set[tuple[int, ...]] = set()
        class_factor = float(2.0 ** key[1])
        for i in range(bucket.levels):
            for j in range(bucket.rounds):
                sampler = bucket.samplers[(i, j)]
                cand: dict[int, int] = {}
                idx_owner: dict[int, tuple[int, ...]] = {}
                exclude: dict[int, int] = {}
                for entry in live:
                    if not bucket.alive_at(entry.vertices, i):
                        continue
                    for idx in bucket.projected_indices(entry.vertices, i, j):
                        if entry.vertices in recovered:
                            exclude[idx] = exclude.get(idx, 0) + entry.count
                        else:
                            cand[idx] = cand.get(idx, 0) + entry.count
                            idx_owner[idx] = entry.vertices
                if not cand:
                    continue
                flags: list = []
                hits = sampler.decode(cand, exclude, flags)
                for (tag, p, power) in flags:
                    all_flags.append((tag, key, i, j, p, power))
                weight = float(2 ** i) * class_factor
                for idx in sorted(hits):
                    content = idx_owner[idx]
                    if content in recovered:
                        continue
                    recovered.add(content)
                    entry = self.directory.by_content[(content, key[1])]
                    for eid in sorted(entry.ids):
                        out.kept.append((eid, weight))
                    out.levels = max(out.levels, i + 1)

    def bit_size(self) -> dict:
        cells = sum(b.bit_size() for b in self.buckets.values())
        directory_bits = 0
        for entry in self.directory.by_content.values():
            directory_bits += 128 + 64 * len(entry.ids) + 32 * (
                len(entry.vertices) + 2)
        return {"cells_bits": cells, "directory_bits": directory_bits,
                "total_bits": cells + directory_bits}

    # -- serialization -----------------------------------------------------

    def serialize(self) -> bytes:
        buf = io.BytesIO()
        buf.write(_MAGIC)
        buf.write(struct.pack("<IIqdqI", _VERSION, self.n, self.m_bound,
                              self.eps, self.seed, 1 if self.naive else 0))
        cfg = self.config
        buf.write(struct.pack("<dddd", cfg.c_phi, cfg.c_phi_naive,
                              cfg.c_rounds, cfg.depth_scale))
        buf.write(struct.pack("<d", -1.0 if cfg.p_override is None
                              else cfg.p_override))
        buf.write(struct.pack("<I", len(self.buckets)))
        for key in sorted(self.buckets):
            bucket = self.buckets[key]
            buf.write(struct.pack("<Ii", key[0], key[1]))
            buf.write(struct.pack("<IIIdII", bucket.levels, bucket.rounds,
                                  bucket.geo, bucket.phi, bucket.depth,
                                  bucket.samplers[(0, 0)].width))
            for i in range(bucket.levels):
                for j in range(bucket.rounds):
                    for lvl in bucket.samplers[(i, j)].levels:
                        buf.write(lvl.cells.astype("<i8").tobytes())
        entries = sorted(self.directory.by_content.values(),
                         key=lambda en: (en.vertices, en.wclass))
        buf.write(struct.pack("<I", len(entries)))
        for entry in entries:
            buf.write(struct.pack("<Ii", len(entry.vertices), entry.wclass))
            buf.write(np.asarray(entry.vertices, dtype="<i4").tobytes())
            buf.write(struct.pack("<I", len(entry.ids)))
            buf.write(np.asarray(sorted(entry.ids), dtype="<i8").tobytes())
        return buf.getvalue()

    @classmethod
    def deserialize(cls, blob: bytes) -> "HypergraphSketch":
        buf = io.BytesIO(blob)
        if buf.read(4) != _MAGIC:
            raise ValueError("bad sketch magic")
        version, n, m_bound, eps, seed, naive = struct.unpack(
            "<IIqdqI", buf.read(struct.calcsize("<IIqdqI")))
        if version != _VERSION:
            raise ValueError(f"unsupported sketch version {version}")
        c_phi, c_phi_naive, c_rounds, depth_scale = struct.unpack(
            "<dddd", buf.read(32))
        p_override = struct.unpack("<d", buf.read(8))[0]
        config = SketchConfig(c_phi=c_phi, c_phi_naive=c_phi_naive,
                              c_rounds=c_rounds, depth_scale=depth_scale,
                              p_override=None if p_override < 0 else
                              p_override)
        sk = cls(n, m_bound, eps, seed, config, naive=bool(naive))
        (bucket_count,) = struct.unpack("<I", buf.read(4))
        for _ in range(bucket_count):
            r, wclass = struct.unpack("<Ii", buf.read(8))
            levels, rounds, geo, phi, depth, width = struct.unpack(
                "<IIIdII", buf.read(struct.calcsize("<IIIdII")))
            bucket = sk._bucket(r, wclass)
            if (bucket.levels, bucket.rounds, bucket.geo,
                    bucket.depth) != (levels, rounds, geo, depth):
                raise ValueError("sketch dimensions do not match parameters")
            for i in range(levels):
                for j in range(rounds):
                    for lvl in bucket.samplers[(i, j)].levels:
                        raw = buf.read(lvl.cells.size * 8)
                        lvl.cells = np.frombuffer(raw, dtype="<i8").reshape(
                            lvl.cells.shape).astype(np.int64)
        (entry_count,) = struct.unpack("<I", buf.read(4))
        for _ in range(entry_count):
            k, wclass = struct.unpack("<Ii", buf.read(8))
            verts = tuple(int(v) for v in
                          np.frombuffer(buf.read(4 * k), dtype="<i4"))
            (idc,) = struct.unpack("<I", buf.read(4))
            ids = [int(x) for x in np.frombuffer(buf.read(8 * idc),
                                                 dtype="<i8")]
            entry = DirectoryEntry(verts, wclass, set(ids))
            sk.directory.by_content[(verts, wclass)] = entry
            for eid in ids:
                sk.directory.content_of_id[eid] = (verts, wclass)
        return sk

    def merge(self, other: "HypergraphSketch") -> None:
        """Cell-wise sum; requires equal seeds, parameters and dimensions,
        and disjoint live hyperedge ids."""
        if (self.n, self.m_bound, self.eps, self.seed, self.naive,
                self.config) != (other.n, other.m_bound, other.eps,
                                 other.seed, other.naive, other.config):
            raise ValueError("sketch parameters differ; cannot merge")
        overlap = set(self.directory.content_of_id) & set(
            other.directory.content_of_id)
        if overlap:
            raise ValueError(
                f"live hyperedge ids overlap: {sorted(overlap)[:5]}")
        for key, bucket in other.buckets.items():
            mine = self._bucket(*key)
            for coords, sampler in bucket.samplers.items():
                for p, lvl in enumerate(sampler.levels):
                    mine.samplers[coords].levels[p].cells += lvl.cells
        for entry in other.directory.by_content.values():
            for eid in sorted(entry.ids):
                self.directory.add(Hyperedge(eid, entry.vertices,
                                             float(2.0 ** entry.wclass)))


def sketch_construct(h: Hypergraph, eps: float, seed: int,
                     config: SketchConfig | None = None,
                     m_bound: int | None = None,
                     naive: bool = False) -> HypergraphSketch:
    """Sketch a whole hypergraph; a pure function of (H, seed, params)."""
    sk = HypergraphSketch(h.n, m_bound if m_bound is not None
                          else max(h.num_edges, 2), eps, seed,
                          config, naive=naive)
    for e in h.edges():
        sk.insert(e)
    return sk


def sketch_recover(sk: HypergraphSketch) -> tuple[SparsifierOutput, list]:
    return sk.recover()


def naive_sketch(h: Hypergraph, eps: float, seed: int,
                 config: SketchConfig | None = None,
                 ) -> tuple[SparsifierOutput, list, HypergraphSketch]:
    """Baseline: one sampler per level over the unprojected multigraph,
    oversampled by an extra factor of r * log2(n)."""
    sk = sketch_construct(h, eps, seed, config, naive=True)
    out, flags = sk.recover()
    return out, flags, sk
