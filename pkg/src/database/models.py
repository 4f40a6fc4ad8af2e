"""
Database Models
Row shapes of the results tables
"""
import json
from dataclasses import dataclass
from typing import Tuple

from ..harness.models import ExperimentRecord


@dataclass
class StoredRecord:
    """One experiment_records row; payload is the record as JSON"""
    run_id: str
    position: int
    stage: str
    n: int
    seed: str
    status: str
    schema_version: int
    payload: str

    @classmethod
    def from_record(cls, run_id: str, position: int, record: ExperimentRecord) -> 'StoredRecord':
        return cls(run_id, position, record.stage, record.n, str(record.seed), record.status,
                   record.schema_version, json.dumps(record.to_dict(), sort_keys=True))

    def to_record(self) -> ExperimentRecord:
        return ExperimentRecord.from_dict(json.loads(self.payload))

    def as_params(self) -> Tuple:
        return (self.run_id, self.position, self.stage, self.n, self.seed, self.status,
                self.schema_version, self.payload)
