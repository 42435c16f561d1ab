"""Driving ports (primary interfaces) for the domain layer."""

from .differentiator_port import DifferentiatorPort
from .inequality_check_port import InequalityCheckPort
from .majorization_check_port import MajorizationCheckPort
from .ensemble_port import EnsemblePort

__all__ = [
    "DifferentiatorPort",
    "InequalityCheckPort",
    "MajorizationCheckPort",
    "EnsemblePort",
]
