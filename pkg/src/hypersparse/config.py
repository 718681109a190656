"""Run configuration: every tunable in one serializable record.

The file format is flat ``key=value`` text; values are parsed back by the
field types declared here. A RunConfig is embedded verbatim in every
verification report.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields

from .dynamic import DynamicConfig
from .online import OnlineConfig
from .sketch import SketchConfig
from .vs_sparsifier import SparsifyConfig


@dataclass
class RunConfig:
    seed: int = 0
    mode: str = "static"
    eps: float = 0.5
    # static engines
    c_rounds: float = 4.0
    c_lambda: float = 2.0
    c_floor: float = 4.0
    eps_split: bool = False
    max_levels: int = -1                 # -1: ceil(log2 m) + 10
    p_override: float = -1.0             # -1: rate 1/r
    dense_vertex_limit: int = 4096
    approx_delta: float = 0.1
    spanner_ell: int = -1                # -1: formula default
    # online
    online_c_rounds: float = 1.0
    online_c_ell: float = 1.0
    # dynamic
    dynamic_c_rounds: float = 1.5
    dynamic_c_ell: float = 2.0
    ell_cap: int = 4096
    label_bits_factor: int = 4
    # sketch
    sketch_c_phi: float = 8.0
    sketch_c_phi_naive: float = 1.0
    sketch_c_rounds: float = 1.0
    sketch_depth_scale: float = 1.5
    # verification
    verify_trials: int = 200

    def _p_override(self) -> float | None:
        return None if self.p_override < 0 else self.p_override

    def sparsify_config(self) -> SparsifyConfig:
        return SparsifyConfig(
            c_rounds=self.c_rounds, c_lambda=self.c_lambda,
            c_floor=self.c_floor, eps_split=self.eps_split,
            max_levels=None if self.max_levels < 0 else self.max_levels,
            p_override=self._p_override(),
            dense_vertex_limit=self.dense_vertex_limit,
            approx_delta=self.approx_delta, seed=self.seed)

    def online_config(self, n: int, m_max: int) -> OnlineConfig:
        return OnlineConfig(
            n=n, m_max=m_max, eps=self.eps, seed=self.seed,
            c_rounds=self.online_c_rounds, c_ell=self.online_c_ell,
            ell_cap=self.ell_cap, p_override=self._p_override())

    def dynamic_config(self, n: int, m_capacity: int) -> DynamicConfig:
        return DynamicConfig(
            n=n, m_capacity=m_capacity, eps=self.eps, seed=self.seed,
            c_rounds=self.dynamic_c_rounds, c_ell=self.dynamic_c_ell,
            ell_cap=self.ell_cap, p_override=self._p_override(),
            label_bits_factor=self.label_bits_factor)

    def sketch_config(self) -> SketchConfig:
        return SketchConfig(
            c_phi=self.sketch_c_phi, c_phi_naive=self.sketch_c_phi_naive,
            c_rounds=self.sketch_c_rounds,
            depth_scale=self.sketch_depth_scale,
            p_override=self._p_override())

    def as_dict(self) -> dict:
        return asdict(self)

    def save_text(self) -> str:
        lines = [f"{f.name}={getattr(self, f.name)}" for f in fields(self)]
        return "\n".join(lines) + "\n"

    @classmethod
    def load_text(cls, text: str) -> "RunConfig":
        values = {}
        types = {f.name: f.type for f in fields(cls)}
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"bad config line: {line!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in types:
                raise ValueError(f"unknown config key: {key!r}")
            ftype = types[key]
            if ftype in ("int", int):
                values[key] = int(value)
            elif ftype in ("float", float):
                values[key] = float(value)
            elif ftype in ("bool", bool):
                values[key] = value.lower() in ("1", "true", "yes", "on")
            else:
                values[key] = value
        return cls(**values)
