"""Driven ports (secondary interfaces) for the domain layer."""

from .root_finder_port import RootFinderPort
from .eigensolver_port import EigenSolverPort, CHAR_POLY_MAX_DIMENSION
from .report_writer_port import ReportWriterPort, ReportWriteError

__all__ = [
    "RootFinderPort",
    "EigenSolverPort",
    "CHAR_POLY_MAX_DIMENSION",
    "ReportWriterPort",
    "ReportWriteError",
]
