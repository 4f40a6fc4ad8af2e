"""
Database Connection Manager
PostgreSQL when DATABASE_URL points at one, SQLite otherwise
"""
import os
import sqlite3
from typing import List, Optional, Sequence, Tuple

from ..services.config_service import config_service
from ..utils.log import get_logger

logger = get_logger('database')


class DatabaseManager:
    """Opens short-lived connections to the results database.

    Queries are written with SQLite '?' placeholders and converted when the
    backend is PostgreSQL.
    """

    def __init__(self, db_path: Optional[str] = None, database_url: Optional[str] = None):
        self._db_path = db_path
        self.database_url = database_url if database_url is not None else os.getenv('DATABASE_URL')
        self.db_type = 'sqlite'
        self._test_connection()

    def _test_connection(self):
        if self.database_url and self.database_url.startswith('postgresql://'):
            try:
                import psycopg2
                logger.info("🗄️ Attempting to connect to PostgreSQL results database...")
                psycopg2.connect(self.database_url, connect_timeout=10).close()
                self.db_type = 'postgresql'
                logger.info("✅ Connected to PostgreSQL results database")
                return
            except ImportError:
                logger.warning("❌ psycopg2 not installed, falling back to SQLite")
            except Exception as e:
                logger.warning(f"❌ PostgreSQL connection failed ({e}), falling back to SQLite")
        self.db_type = 'sqlite'
        logger.debug(f"🗄️ Using SQLite results database at {self.sqlite_path}")

    @property
    def sqlite_path(self) -> str:
        return self._db_path or config_service.get_str('results_db_path')

    def get_connection(self):
        if self.db_type == 'postgresql':
            import psycopg2
            return psycopg2.connect(self.database_url, connect_timeout=10)
        return sqlite3.connect(self.sqlite_path)

    def _convert(self, query: str) -> str:
        return query.replace('?', '%s') if self.db_type == 'postgresql' else query

    def execute_query(self, query: str, params: Optional[Sequence] = None):
        """Run one statement; SELECTs return their first row, everything else True"""
        conn = self.get_connection()
        converted = self._convert(query)
        try:
            cursor = conn.cursor()
            cursor.execute(converted, tuple(params or ()))
            result = cursor.fetchone() if query.strip().upper().startswith('SELECT') else True
            conn.commit()
            return result
        except Exception as e:
            logger.error(f"Database error in execute_query: {e} (query: {converted})")
            raise
        finally:
            conn.close()

    def execute_transaction(self, steps: Sequence[Tuple[str, List[Sequence]]]):
        """Run every (query, rows) step on one connection; all of them commit or none do"""
        conn = self.get_connection()
        try:
            cursor = conn.cursor()
            for query, rows in steps:
                if rows:
                    cursor.executemany(self._convert(query), [tuple(r) for r in rows])
            conn.commit()
        except Exception as e:
            conn.rollback()
            logger.error(f"Database error in execute_transaction, rolled back: {e}")
            raise
        finally:
            conn.close()

    def fetch_all(self, query: str, params: Optional[Sequence] = None) -> list:
        conn = self.get_connection()
        try:
            cursor = conn.cursor()
            cursor.execute(self._convert(query), tuple(params or ()))
            return cursor.fetchall()
        finally:
            conn.close()

    def fetch_one(self, query: str, params: Optional[Sequence] = None):
        """First row, or None when the query matches nothing"""
        conn = self.get_connection()
        try:
            cursor = conn.cursor()
            cursor.execute(self._convert(query), tuple(params or ()))
            return cursor.fetchone()
        finally:
            conn.close()


# Global database manager instance
db_manager = DatabaseManager()
