"""File-based report writer: JSONL instance records plus CSV/JSON summaries."""

import csv
import json
import math
from pathlib import Path
from typing import Any, Dict, IO, Optional

from src.domain.entities.ensemble import EnsembleSummary
from src.domain.ports.driven.report_writer_port import ReportWriteError, ReportWriterPort
from src.utils import logger


RECORDS_FILE = "instances.jsonl"
SUMMARY_CSV_FILE = "summary.csv"
SUMMARY_JSON_FILE = "summary.json"
SUMMARY_COLUMNS = [
    "check", "pass", "fail", "skipped", "min_slack", "max_residual", "equality_cases", "anomalies",
]


def _sanitize(value: Any) -> Any:
    """Replace non-finite floats by None so every line is strict JSON."""
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, dict):
        return {key: _sanitize(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sanitize(item) for item in value]
    return value


def encode_record(record: Dict[str, Any]) -> str:
    """Deterministic single-line JSON encoding of one record."""
    return json.dumps(_sanitize(record), sort_keys=True, separators=(",", ":"), allow_nan=False)


class JsonlReportAdapter(ReportWriterPort):
    """Report writer implementing ReportWriterPort on the local file system.

    A run directory holds ``instances.jsonl`` (one record per line, in
    the order written), ``summary.csv`` and ``summary.json``.
    """

    def __init__(self, output_dir: str = "circulant-reports"):
        """Initialize the report adapter.

        Args:
            output_dir: Directory that receives run outputs
        """
        self._output_dir = Path(output_dir)
        self._run_dir: Optional[Path] = None
        self._records: Optional[IO[str]] = None

    @property
    def run_dir(self) -> Optional[Path]:
        return self._run_dir

    def open_run(self, run_name: Optional[str] = None) -> str:
        run_dir = self._output_dir / run_name if run_name else self._output_dir
        records_path = run_dir / RECORDS_FILE
        try:
            run_dir.mkdir(parents=True, exist_ok=True)
            self._records = open(records_path, "w", encoding="utf-8", newline="\n")
        except OSError as e:
            raise ReportWriteError(str(records_path), str(e))
        self._run_dir = run_dir
        logger.debug(f"Writing instance records to {records_path}")
        return str(records_path)

    def write_record(self, record: Dict[str, Any]) -> None:
        if self._records is None or self._run_dir is None:
            raise ReportWriteError(str(self._output_dir / RECORDS_FILE), "no run is open")
        try:
            self._records.write(encode_record(record) + "\n")
        except (OSError, TypeError, ValueError) as e:
            raise ReportWriteError(str(self._run_dir / RECORDS_FILE), str(e))

    def close_run(self, summary: EnsembleSummary) -> str:
        if self._run_dir is None:
            raise ReportWriteError(str(self._output_dir / SUMMARY_CSV_FILE), "no run is open")
        csv_path = self._run_dir / SUMMARY_CSV_FILE
        json_path = self._run_dir / SUMMARY_JSON_FILE
        summary.records_path = str(self._run_dir / RECORDS_FILE)
        summary.summary_path = str(csv_path)
        try:
            if self._records is not None:
                self._records.close()
            with open(csv_path, "w", encoding="utf-8", newline="") as f:
                writer = csv.DictWriter(f, fieldnames=SUMMARY_COLUMNS, lineterminator="\n")
                writer.writeheader()
                writer.writerows(summary.rows())
        except OSError as e:
            raise ReportWriteError(str(csv_path), str(e))
        finally:
            self._records = None

        try:
            with open(json_path, "w", encoding="utf-8") as f:
                json.dump(_sanitize(summary.to_dict()), f, indent=2, sort_keys=True)
                f.write("\n")
        except OSError as e:
            raise ReportWriteError(str(json_path), str(e))
        return str(csv_path)

    def abort_run(self) -> None:
        if self._records is not None:
            try:
                self._records.close()
            except OSError as e:
                logger.warn(f"Could not close {self._run_dir / RECORDS_FILE}: {e}")
            logger.warn(f"Run in {self._run_dir} aborted before its summary was written")
        self._records = None
        self._run_dir = None
