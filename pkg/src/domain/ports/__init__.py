"""Domain ports (interfaces) for the hexagonal architecture."""

# Driving ports (primary interfaces)
from .driving.differentiator_port import DifferentiatorPort
from .driving.inequality_check_port import InequalityCheckPort
from .driving.majorization_check_port import MajorizationCheckPort
from .driving.ensemble_port import EnsemblePort

# Driven ports (secondary interfaces)
from .driven.root_finder_port import RootFinderPort
from .driven.eigensolver_port import EigenSolverPort
from .driven.report_writer_port import ReportWriterPort, ReportWriteError

__all__ = [
    # Driving ports
    "DifferentiatorPort",
    "InequalityCheckPort",
    "MajorizationCheckPort",
    "EnsemblePort",
    # Driven ports
    "RootFinderPort",
    "EigenSolverPort",
    "ReportWriterPort",
    "ReportWriteError",
]
