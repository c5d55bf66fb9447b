"""
Data processing utilities for report backups, atomic writes and formatting.
"""

import csv
import io
import json
import logging
import math
import os
import shutil
import tempfile
from datetime import datetime
from typing import Any, Dict, List

import numpy as np

CSV_COLUMNS = ['check_id', 'trials', 'passes', 'worst_slack', 'worst_trial_index']
SUMMARY_WIDTH = 240


class CacheManager:
    """Handle report backups and atomic file replacement."""

    @staticmethod
    def rotating_backup_file(source_path: str, backup_dir: str, max_backups: int = 5):
        """Create rotating backups of a file."""
        try:
            if not os.path.exists(source_path):
                return

            os.makedirs(backup_dir, exist_ok=True)
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S_%f")
            backup_filename = f"{os.path.basename(source_path)}_{timestamp}.bak"
            backup_path = os.path.join(backup_dir, backup_filename)

            shutil.copy2(source_path, backup_path)
            CacheManager._cleanup_old_backups(backup_dir, os.path.basename(source_path), max_backups)

            logging.debug(f"Created backup: {backup_path}")

        except Exception as e:
            logging.error(f"Error creating backup: {e}")

    @staticmethod
    def _cleanup_old_backups(backup_dir: str, stem: str, max_backups: int):
        """Remove old backups of one file, keeping only the most recent ones."""
        try:
            backup_files = []
            for filename in os.listdir(backup_dir):
                if filename.startswith(f"{stem}_") and filename.endswith('.bak'):
                    filepath = os.path.join(backup_dir, filename)
                    backup_files.append((filepath, os.path.getmtime(filepath), filename))

            # Newest first; the timestamped name breaks mtime ties
            backup_files.sort(key=lambda x: (x[1], x[2]), reverse=True)

            for filepath, _, _ in backup_files[max_backups:]:
                os.remove(filepath)
                logging.debug(f"Removed old backup: {filepath}")

        except Exception as e:
            logging.error(f"Error cleaning up backups: {e}")

    @staticmethod
    def atomic_write_text(path: str, text: str):
        """Write to a temp file beside `path`, then rename over it."""
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        fd, temp_path = tempfile.mkstemp(prefix='.tmp_', dir=directory)
        try:
            with os.fdopen(fd, 'w', encoding='utf-8', newline='') as f:
                f.write(text)
            os.replace(temp_path, path)
        except Exception:
            if os.path.exists(temp_path):
                os.remove(temp_path)
            raise


def to_jsonable(value: Any) -> Any:
    """
    Convert report values to plain JSON types.

    Complex numbers become [re, im]; NaN and infinities become None; numpy
    arrays and scalars become lists and Python numbers.
    """
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        return to_jsonable(value.item())
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, complex):
        return [to_jsonable(value.real), to_jsonable(value.imag)]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__} into a report")


class ReportFormatting:
    """Render campaign reports for files and the console."""

    @staticmethod
    def to_json(payload: Dict[str, Any]) -> str:
        return json.dumps(to_jsonable(payload), sort_keys=True, indent=2, allow_nan=False) + "\n"

    @staticmethod
    def to_csv(rows: List[Dict[str, Any]]) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, extrasaction='ignore', lineterminator='\n')
        writer.writeheader()
        for row in rows:
            writer.writerow({key: ('' if row.get(key) is None else row.get(key)) for key in CSV_COLUMNS})
        return buffer.getvalue()

    @staticmethod
    def summary_line(payload: Dict[str, Any]) -> str:
        checks = payload.get('checks', [])
        failing = [c['check_id'] for c in checks if c['passes'] < c['trials']]
        verdict = 'PASS' if not failing else 'FAIL'
        line = f"{verdict}: {len(checks) - len(failing)}/{len(checks)} checks passed over {payload.get('trials', 0)} trials"
        if failing:
            line += f" (failing: {ReportFormatting.truncate_text(', '.join(failing), SUMMARY_WIDTH)})"
        return line

    @staticmethod
    def truncate_text(text: str, max_length: int, suffix: str = "...") -> str:
        if len(text) <= max_length:
            return text
        return text[:max_length - len(suffix)] + suffix
