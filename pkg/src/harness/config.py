"""
Experiment Configuration
JSON-described sweeps over graph size, seeds and message counts
"""
import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import List, Optional, Union

from ..services.config_service import config_service
from ..utils.errors import ConfigError
from ..utils.rng import MAX_SEED


@dataclass
class ExperimentConfig:
    """One sweep: every n in n_values crossed with every seed, and k = ratio·δ per ratio.

    Unset constants fall back to the configuration service when the run starts.
    """
    n_values: List[int] = field(default_factory=list)
    seeds: List[int] = field(default_factory=list)
    p: Optional[float] = None
    c_p: Optional[float] = None
    graph_file: Optional[str] = None
    k_ratios: List[float] = field(default_factory=lambda: [1.0, 10.0, 50.0])
    cover_constant: Optional[float] = None
    phases: Optional[int] = None
    mixing_tolerance: Optional[float] = None
    max_retries: Optional[int] = None
    seed_increment: Optional[int] = None
    whp_threshold: Optional[float] = None
    output_dir: Optional[str] = None
    measure_subgraph_diameters: bool = False
    spectral: bool = True
    workers: int = 1
    store_results: bool = False
    run_id: str = 'default'

    def __post_init__(self):
        self.validate()

    def validate(self):
        if not self.seeds:
            raise ConfigError("experiment needs at least one seed")
        if any(not 0 <= s <= MAX_SEED for s in self.seeds):
            raise ConfigError("seeds must be unsigned 64-bit integers")
        if self.graph_file is None and not self.n_values:
            raise ConfigError("experiment needs n_values or a graph_file")
        if any(n < 2 for n in self.n_values):
            raise ConfigError("every n must be at least 2")
        if self.p is not None and not 0.0 < self.p <= 1.0:
            raise ConfigError(f"p must lie in (0, 1], got {self.p}")
        if not self.k_ratios or any(r <= 0 for r in self.k_ratios):
            raise ConfigError("k_ratios must be a nonempty list of positive numbers")
        for name in ('c_p', 'cover_constant', 'mixing_tolerance', 'whp_threshold'):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ConfigError(f"{name} must be positive, got {value}")
        if self.phases is not None and self.phases < 0:
            raise ConfigError(f"phases must be nonnegative, got {self.phases}")
        if self.max_retries is not None and self.max_retries < 0:
            raise ConfigError(f"max_retries must be nonnegative, got {self.max_retries}")
        if self.seed_increment is not None and self.seed_increment < 1:
            raise ConfigError(f"seed_increment must be positive, got {self.seed_increment}")
        if self.workers < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}")

    @property
    def resolved_max_retries(self) -> int:
        return config_service.get_int('max_retries') if self.max_retries is None else self.max_retries

    @property
    def resolved_seed_increment(self) -> int:
        return config_service.get_int('seed_increment') if self.seed_increment is None else self.seed_increment

    @property
    def resolved_whp_threshold(self) -> float:
        return config_service.get_float('whp_threshold') if self.whp_threshold is None else self.whp_threshold

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> 'ExperimentConfig':
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown experiment keys: {', '.join(unknown)}")
        try:
            return cls(**data)
        except TypeError as e:
            raise ConfigError(f"malformed experiment config: {e}")

    @classmethod
    def from_json(cls, path: Union[str, Path]) -> 'ExperimentConfig':
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read experiment config {path}: {e}")
        if not isinstance(data, dict):
            raise ConfigError("experiment config must be a JSON object")
        return cls.from_dict(data)
