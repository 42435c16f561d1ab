"""Report writer driven port (secondary interface)."""

from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

from ...entities.base import DomainError
from ...entities.ensemble import EnsembleSummary


class ReportWriteError(DomainError):
    """Raised when a report file cannot be written."""

    def __init__(self, path: str, reason: str):
        super().__init__(f"cannot write {path}: {reason}")
        self.path = path
        self.reason = reason


class ReportWriterPort(ABC):
    """Secondary port for persisting ensemble evidence.

    Records are written in the order they are handed over; one run is
    bracketed by ``open_run`` and ``close_run``.
    """

    @abstractmethod
    def open_run(self, run_name: Optional[str] = None) -> str:
        """Start a run, truncating any previous output.

        Args:
            run_name: Optional subdirectory name for this run

        Returns:
            Path of the per-instance records file

        Raises:
            ReportWriteError: If the output location is not writable
        """
        pass

    @abstractmethod
    def write_record(self, record: Dict[str, Any]) -> None:
        """Append one per-instance record.

        Args:
            record: JSON-serializable mapping

        Raises:
            ReportWriteError: If the write fails or no run is open
        """
        pass

    @abstractmethod
    def close_run(self, summary: EnsembleSummary) -> str:
        """Finish the run and persist the summary.

        Args:
            summary: Aggregated statistics of the run

        Returns:
            Path of the summary file

        Raises:
            ReportWriteError: If the write fails
        """
        pass

    @abstractmethod
    def abort_run(self) -> None:
        """Release an open run without writing a summary.

        Records already written stay on disk; calling this with no run
        open does nothing.
        """
        pass
