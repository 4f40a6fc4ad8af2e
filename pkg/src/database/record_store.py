"""
Record Store
Saves and loads experiment records by run id
"""
from typing import List, Optional

from .connection import DatabaseManager, db_manager
from .models import StoredRecord
from .setup import DatabaseSetup
from ..harness.models import SCHEMA_VERSION, ExperimentRecord
from ..utils.log import get_logger

logger = get_logger('database')

_COLUMNS = 'run_id, position, stage, n, seed, status, schema_version, payload'


class RecordStore:
    """Experiment records keyed by (run_id, position); saving a run replaces it"""

    def __init__(self, db: Optional[DatabaseManager] = None):
        self.db = db or db_manager
        self._ready = False

    def _ensure_schema(self):
        if not self._ready:
            DatabaseSetup(self.db).initialize_database()
            self._ready = True

    def save_records(self, run_id: str, records: List[ExperimentRecord]) -> int:
        self._ensure_schema()
        rows = [StoredRecord.from_record(run_id, i, r).as_params() for i, r in enumerate(records)]
        self.db.execute_transaction([
            ('DELETE FROM experiment_records WHERE run_id = ?', [(run_id,)]),
            (f'INSERT INTO experiment_records ({_COLUMNS}) VALUES (?, ?, ?, ?, ?, ?, ?, ?)', rows),
        ])
        logger.info(f"💾 Stored {len(rows)} record(s) for run '{run_id}'")
        return len(rows)

    def load_records(self, run_id: str) -> List[ExperimentRecord]:
        self._ensure_schema()
        rows = self.db.fetch_all(f'SELECT {_COLUMNS} FROM experiment_records '
                                 f'WHERE run_id = ? ORDER BY position', (run_id,))
        stored = [StoredRecord(*row) for row in rows]
        newer = [s for s in stored if s.schema_version > SCHEMA_VERSION]
        if newer:
            logger.warning(f"run '{run_id}' has {len(newer)} record(s) from a newer schema")
        return [s.to_record() for s in stored]

    def list_runs(self) -> List[str]:
        self._ensure_schema()
        return [row[0] for row in self.db.fetch_all(
            'SELECT DISTINCT run_id FROM experiment_records ORDER BY run_id')]


# Global record store instance
record_store = RecordStore()
