"""
Scan archive - sqlite storage for conjecture scan runs and their records
"""

import sqlite3

from utils.constants import APP_VERSION, DB_SCHEMA, get_app_dirs
from utils.log import logger


class ScanDatabase:
    """Database manager for archived conjecture scans"""

    def __init__(self, db_path=None):
        self.db_path = db_path if db_path is not None else get_app_dirs()['database']
        self.init_database()
        logger.debug(f"📊 Scan archive initialized: {self.db_path}")

    def _connect(self):
        conn = sqlite3.connect(self.db_path)
        conn.row_factory = sqlite3.Row
        return conn

    def init_database(self):
        """Create the runs and records tables"""
        conn = self._connect()
        try:
            cursor = conn.cursor()
            cursor.execute(DB_SCHEMA['scan_runs_table'])
            cursor.execute(DB_SCHEMA['scan_records_table'])
            conn.commit()
        finally:
            conn.close()

    def add_run(self, command, seed, graph_count, violation_count, report_hash,
                tool_version=APP_VERSION):
        """Insert a run header and return its id"""
        conn = self._connect()
        try:
            cursor = conn.cursor()
            cursor.execute('''
                INSERT INTO scan_runs
                (command, seed, graph_count, violation_count, report_hash, tool_version)
                VALUES (?, ?, ?, ?, ?, ?)
            ''', (command, seed, graph_count, violation_count, report_hash, tool_version))
            conn.commit()
            return cursor.lastrowid
        finally:
            conn.close()

    @staticmethod
    def _record_row(run_id, position, record, edge_list):
        seed = None if record.seed is None else str(record.seed)
        return (run_id, position, record.label, record.n, record.edge_hash, seed, edge_list,
                record.verdict, record.vertex, record.margin)

    def _insert_records(self, rows):
        conn = self._connect()
        try:
            conn.executemany('''
                INSERT INTO scan_records
                (run_id, position, label, n, edge_hash, seed, edge_list, verdict, vertex, margin)
                VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
            ''', rows)
            conn.commit()
        except sqlite3.Error as e:
            logger.error(f"❌ Error archiving scan records: {e}")
            conn.rollback()
            raise
        finally:
            conn.close()
        return len(rows)

    def add_record(self, run_id, position, record, edge_list):
        """Archive one scan record at its corpus position"""
        return self._insert_records([self._record_row(run_id, position, record, edge_list)])

    def add_records(self, run_id, records, edge_lists):
        """Archive scan records in corpus order; edge_lists pairs with records"""
        return self._insert_records([
            self._record_row(run_id, position, record, text)
            for position, (record, text) in enumerate(zip(records, edge_lists))
        ])

    def get_runs(self):
        conn = self._connect()
        try:
            return [dict(row) for row in conn.execute('SELECT * FROM scan_runs ORDER BY id')]
        finally:
            conn.close()

    def get_run_records(self, run_id):
        conn = self._connect()
        try:
            rows = conn.execute('SELECT * FROM scan_records WHERE run_id = ? ORDER BY position',
                                (run_id,))
            return [dict(row) for row in rows]
        finally:
            conn.close()

    def get_violations(self, run_id=None):
        """Violated records, across all runs unless run_id is given"""
        query = "SELECT * FROM scan_records WHERE verdict = 'violated'"
        params = ()
        if run_id is not None:
            query += " AND run_id = ?"
            params = (run_id,)
        conn = self._connect()
        try:
            return [dict(row) for row in conn.execute(query + " ORDER BY run_id, position", params)]
        finally:
            conn.close()

    def remove_run(self, run_id):
        """Delete a run and its records; returns True if the run existed"""
        conn = self._connect()
        try:
            cursor = conn.cursor()
            cursor.execute('DELETE FROM scan_records WHERE run_id = ?', (run_id,))
            cursor.execute('DELETE FROM scan_runs WHERE id = ?', (run_id,))
            conn.commit()
            return cursor.rowcount > 0
        finally:
            conn.close()
