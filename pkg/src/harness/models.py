"""
Experiment Records
One row per trial and stage, with a fixed column order per CSV
"""
import csv
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

SCHEMA_VERSION = 2

STAGE_PACKING = 'packing'
STAGE_BROADCAST = 'broadcast'

STATUS_OK = 'ok'
STATUS_UNCOVERED = 'uncovered'
STATUS_FAILED = 'failed'

PACKING_COLUMNS = [
    'run_id', 'n', 'seed', 'graph_seed', 'p', 'min_degree', 'max_degree', 'diameter',
    'lambda2_before', 'lambda2_after', 'mixing_time', 'phases', 'num_walks', 'covered_walks',
    'cobra_seed', 'retries', 'max_edge_weight', 'max_subgraph_diameter',
    'S', 'H', 'W', 'build_rounds', 'status', 'error', 'schema_version',
]

BROADCAST_COLUMNS = [
    'run_id', 'n', 'seed', 'min_degree', 'diameter', 'k', 'k_ratio', 'S', 'H', 'W',
    'broadcast_rounds', 'baseline_rounds', 'lower_bound', 'status', 'error', 'schema_version',
]


@dataclass
class ExperimentRecord:
    stage: str
    run_id: str
    n: int
    seed: int
    graph_seed: Optional[int] = None
    p: Optional[float] = None
    min_degree: Optional[int] = None
    max_degree: Optional[int] = None
    diameter: Optional[int] = None
    lambda2_before: Optional[float] = None
    lambda2_after: Optional[float] = None
    mixing_time: Optional[int] = None
    phases: Optional[int] = None
    num_walks: Optional[int] = None
    covered_walks: Optional[int] = None
    cobra_seed: Optional[int] = None
    retries: int = 0
    max_edge_weight: Optional[int] = None
    max_subgraph_diameter: Optional[int] = None
    S: Optional[int] = None
    H: Optional[int] = None
    W: Optional[int] = None
    build_rounds: Optional[int] = None
    k: Optional[int] = None
    k_ratio: Optional[float] = None
    broadcast_rounds: Optional[int] = None
    baseline_rounds: Optional[int] = None
    lower_bound: Optional[int] = None
    status: str = STATUS_OK
    error: str = ''
    schema_version: int = SCHEMA_VERSION

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> 'ExperimentRecord':
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in known})

    def to_row(self, columns: Sequence[str]) -> List[str]:
        return [_format_cell(getattr(self, c)) for c in columns]


def _format_cell(value) -> str:
    if value is None:
        return ''
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def write_records_csv(records: Iterable[ExperimentRecord], path: Union[str, Path],
                      columns: Sequence[str]):
    """Write records in the given order; no timestamps so reruns are byte-identical"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open('w', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(columns)
        for record in records:
            writer.writerow(record.to_row(columns))
