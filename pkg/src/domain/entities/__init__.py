"""Domain entities for the circulant differentiator."""

from .base import (
    ValueObject,
    DomainError,
    ValidationError,
    NonCenteredError,
    NumericalError,
    ConvergenceError,
    complex_to_pair,
    pair_to_complex,
    scale_of,
)
from .polynomial import (
    Polynomial,
    RootSet,
    MultisetMatching,
    are_collinear,
    canonical_order,
    match_multisets,
)
from .matrix import DenseMatrix, Spectrum
from .circulant import Circulant, fourier_matrix, vandermonde_gram_residual
from .reports import (
    PowerSums,
    InequalityName,
    InequalityReport,
    PhiKind,
    PhiTransform,
    MajorizationReport,
    CriticalPointResult,
)
from .tolerances import ToleranceProfile
from .ensemble import (
    RootFamily,
    CheckName,
    CheckStatus,
    CheckOutcome,
    CheckTally,
    EnsembleConfig,
    EnsembleSummary,
)

__all__ = [
    # Base classes and utilities
    "ValueObject",
    "DomainError",
    "ValidationError",
    "NonCenteredError",
    "NumericalError",
    "ConvergenceError",
    "complex_to_pair",
    "pair_to_complex",
    "scale_of",
    # Polynomials and roots
    "Polynomial",
    "RootSet",
    "MultisetMatching",
    "are_collinear",
    "canonical_order",
    "match_multisets",
    # Matrices
    "DenseMatrix",
    "Spectrum",
    "Circulant",
    "fourier_matrix",
    "vandermonde_gram_residual",
    # Reports
    "PowerSums",
    "InequalityName",
    "InequalityReport",
    "PhiKind",
    "PhiTransform",
    "MajorizationReport",
    "CriticalPointResult",
    "ToleranceProfile",
    # Ensembles
    "RootFamily",
    "CheckName",
    "CheckStatus",
    "CheckOutcome",
    "CheckTally",
    "EnsembleConfig",
    "EnsembleSummary",
]
