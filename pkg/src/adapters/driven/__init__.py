"""Driven adapters (secondary adapters) for external systems.

These adapters implement the driven ports: root finding, eigenvalue
computation and report persistence.
"""

from .aberth_root_finder_adapter import AberthRootFinderAdapter
from .companion_root_finder_adapter import CompanionRootFinderAdapter
from .qr_eigensolver_adapter import QREigenSolverAdapter
from .lapack_eigensolver_adapter import LapackEigenSolverAdapter
from .jsonl_report_adapter import JsonlReportAdapter

__all__ = [
    "AberthRootFinderAdapter",
    "CompanionRootFinderAdapter",
    "QREigenSolverAdapter",
    "LapackEigenSolverAdapter",
    "JsonlReportAdapter",
]
