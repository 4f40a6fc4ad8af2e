"""
Database Setup and Initialization
Creates the results tables and runs versioned migrations
"""
from typing import Optional

from .connection import DatabaseManager, db_manager
from ..utils.log import get_logger

logger = get_logger('database')

LATEST_VERSION = 2


class DatabaseSetup:
    """Brings a results database up to LATEST_VERSION"""

    def __init__(self, db: Optional[DatabaseManager] = None):
        self.db = db or db_manager

    def initialize_database(self):
        logger.info("🔧 Initializing results database...")
        self._create_tables()
        version = self._run_migrations()
        logger.info(f"✅ Results database ready (version {version})")

    def _create_tables(self):
        conn = self.db.get_connection()
        try:
            cursor = conn.cursor()
            cursor.execute('CREATE TABLE IF NOT EXISTS db_version (version INTEGER PRIMARY KEY)')
            conn.commit()
        except Exception as e:
            logger.error(f"❌ Error creating tables: {e}")
            raise
        finally:
            conn.close()

    def current_version(self) -> int:
        row = self.db.fetch_one('SELECT version FROM db_version ORDER BY version DESC LIMIT 1')
        return row[0] if row else 0

    def _run_migrations(self) -> int:
        version = self.current_version()
        conn = self.db.get_connection()
        try:
            cursor = conn.cursor()
            if version < 1:
                self._migration_records_table(cursor)
                self._mark(cursor, 1)
            if version < 2:
                cursor.execute('CREATE INDEX IF NOT EXISTS idx_records_run '
                               'ON experiment_records (run_id, position)')
                self._mark(cursor, 2)
            conn.commit()
        except Exception as e:
            logger.error(f"❌ Error running migrations: {e}")
            raise
        finally:
            conn.close()
        return max(version, LATEST_VERSION)

    def _migration_records_table(self, cursor):
        # Seeds span the full unsigned 64-bit range, so they are stored as text.
        cursor.execute('''CREATE TABLE IF NOT EXISTS experiment_records
                             (run_id TEXT NOT NULL, position INTEGER NOT NULL, stage TEXT NOT NULL,
                              n INTEGER NOT NULL, seed TEXT NOT NULL, status TEXT NOT NULL,
                              schema_version INTEGER NOT NULL, payload TEXT NOT NULL,
                              PRIMARY KEY (run_id, position))''')

    def _mark(self, cursor, version: int):
        if self.db.db_type == 'postgresql':
            cursor.execute('INSERT INTO db_version (version) VALUES (%s) ON CONFLICT (version) DO NOTHING',
                           (version,))
        else:
            cursor.execute('INSERT OR REPLACE INTO db_version (version) VALUES (?)', (version,))


# Global database setup instance
db_setup = DatabaseSetup()
