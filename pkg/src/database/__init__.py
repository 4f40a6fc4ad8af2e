# Results database for experiment records
from .connection import DatabaseManager, db_manager
from .models import StoredRecord
from .setup import DatabaseSetup, LATEST_VERSION
from .record_store import RecordStore

__all__ = ['DatabaseManager', 'db_manager', 'StoredRecord', 'DatabaseSetup', 'LATEST_VERSION', 'RecordStore']
