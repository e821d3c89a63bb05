"""
Run Log
SQLite sidecar recording every CLI invocation

Timestamps live here and nowhere else, so data files stay reproducible.
A failing run log never fails the command that writes to it.
"""
import json
import logging
import sqlite3
from contextlib import contextmanager
from datetime import datetime
from typing import Any, Dict, List, Optional
from uuid import uuid4

from config import LOG_MESSAGES
from models import RunConfig

logger = logging.getLogger(__name__)


class RunLog:
    """SQLite store for command runs"""

    def __init__(self, db_path: str = "gaussmp_runs.db"):
        """
        Open (and if needed create) the run log

        Args:
            db_path: Path to SQLite database file
        """
        self.db_path = db_path
        self.init_db()

    @contextmanager
    def get_connection(self):
        """
        Context manager for database connections

        Yields:
            sqlite3.Connection: Database connection
        """
        conn = sqlite3.connect(self.db_path)
        conn.row_factory = sqlite3.Row
        try:
            yield conn
            conn.commit()
        except Exception as e:
            conn.rollback()
            logger.error(f"Run log error: {e}")
            raise
        finally:
            conn.close()

    def init_db(self):
        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("""
                CREATE TABLE IF NOT EXISTS runs (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    run_id TEXT UNIQUE NOT NULL,
                    command TEXT NOT NULL,
                    args TEXT NOT NULL,
                    status TEXT NOT NULL,
                    exit_code INTEGER,
                    summary TEXT,
                    started_at TEXT NOT NULL,
                    finished_at TEXT
                )
            """)
            cursor.execute("""
                CREATE INDEX IF NOT EXISTS idx_runs_command
                ON runs(command)
            """)

    def generate_run_id(self) -> str:
        date_str = datetime.now().strftime("%Y%m%d")
        return f"RUN-{date_str}-{str(uuid4())[:8].upper()}"

    def start_run(self, config: RunConfig) -> Optional[str]:
        """
        Insert a run in state 'running'

        Args:
            config: Flags of the invocation

        Returns:
            Optional[str]: Run ID, or None if the log could not be written
        """
        run_id = self.generate_run_id()
        try:
            with self.get_connection() as conn:
                conn.execute("""
                    INSERT INTO runs (run_id, command, args, status, started_at)
                    VALUES (?, ?, ?, ?, ?)
                """, (
                    run_id,
                    config.command,
                    config.model_dump_json(),
                    "running",
                    datetime.now().isoformat(),
                ))
            return run_id
        except sqlite3.Error as e:
            logger.error(f"Failed to record run start: {e}")
            return None

    def finish_run(self, run_id: Optional[str], exit_code: int, summary: Dict[str, Any]) -> bool:
        """Close a run with its exit code and a JSON summary"""
        if run_id is None:
            return False
        try:
            with self.get_connection() as conn:
                conn.execute("""
                    UPDATE runs
                    SET status = ?, exit_code = ?, summary = ?, finished_at = ?
                    WHERE run_id = ?
                """, (
                    "error" if exit_code == 2 else "completed",
                    exit_code,
                    json.dumps(summary, default=str),
                    datetime.now().isoformat(),
                    run_id,
                ))
            logger.debug(LOG_MESSAGES["run_logged"].format(run_id=run_id, path=self.db_path))
            return True
        except sqlite3.Error as e:
            logger.error(f"Failed to record run finish: {e}")
            return False

    def _row_to_dict(self, row: sqlite3.Row) -> Dict[str, Any]:
        return {
            "run_id": row["run_id"],
            "command": row["command"],
            "args": json.loads(row["args"]),
            "status": row["status"],
            "exit_code": row["exit_code"],
            "summary": json.loads(row["summary"]) if row["summary"] else None,
            "started_at": row["started_at"],
            "finished_at": row["finished_at"],
        }

    def get_run(self, run_id: str) -> Optional[Dict[str, Any]]:
        with self.get_connection() as conn:
            row = conn.execute("SELECT * FROM runs WHERE run_id = ?", (run_id,)).fetchone()
            return self._row_to_dict(row) if row else None

    def recent_runs(self, limit: int = 10) -> List[Dict[str, Any]]:
        """Latest runs first"""
        with self.get_connection() as conn:
            rows = conn.execute("SELECT * FROM runs ORDER BY id DESC LIMIT ?", (limit,)).fetchall()
            return [self._row_to_dict(row) for row in rows]
