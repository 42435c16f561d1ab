"""Domain services package."""

from .differentiator_service import DifferentiatorService
from .inequality_service import InequalityService
from .majorization_service import MajorizationService
from .ensemble_service import EnsembleService

__all__ = [
    "DifferentiatorService",
    "InequalityService",
    "MajorizationService",
    "EnsembleService",
]
