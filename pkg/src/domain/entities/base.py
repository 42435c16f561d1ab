"""Base classes for domain entities."""

from abc import ABC
from dataclasses import dataclass
from typing import Any, Iterable, List, Sequence

import numpy as np


@dataclass(frozen=True)
class ValueObject(ABC):
    """Base class for value objects - immutable objects without identity."""
    pass


class DomainError(Exception):
    """Base exception for domain-related errors."""
    pass


class ValidationError(DomainError):
    """Exception raised when domain validation fails."""

    def __init__(self, message: str, field: str = None):
        super().__init__(message)
        self.field = field
        self.message = message


class NonCenteredError(ValidationError):
    """Raised by checks that only apply when the roots sum to zero."""

    def __init__(self, s1: complex, tolerance: float):
        super().__init__(
            f"mass centre nonzero: |s1| = {abs(s1):.3e} exceeds {tolerance:.3e}", "roots"
        )
        self.s1 = s1
        self.tolerance = tolerance


class NumericalError(DomainError):
    """Exception raised when a numerical kernel cannot produce a trustworthy result."""
    pass


class ConvergenceError(NumericalError):
    """Raised when an iterative kernel exhausts its iteration budget."""

    def __init__(self, message: str, residual: float = float("nan"), iterations: int = 0):
        super().__init__(f"{message} (best residual {residual:.3e} after {iterations} iterations)")
        self.residual = residual
        self.iterations = iterations


def validate_same_length(a: Sequence[Any], b: Sequence[Any], field_name: str) -> None:
    """Validate that two sequences have equal length."""
    if len(a) != len(b):
        raise ValidationError(
            f"{field_name}: size mismatch ({len(a)} != {len(b)})", field_name
        )


def validate_finite(values: np.ndarray, field_name: str) -> None:
    """Validate that every entry of an array is finite."""
    if not np.all(np.isfinite(values)):
        raise ValidationError(f"{field_name} must contain only finite values", field_name)


def frozen_array(values: Iterable[Any], dtype=complex) -> np.ndarray:
    """Copy values into a read-only numpy array."""
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


def scale_of(values: Iterable[complex]) -> float:
    """Per-instance tolerance normalizer max(1, max |v|)."""
    array = np.asarray(list(values) if not isinstance(values, np.ndarray) else values)
    if array.size == 0:
        return 1.0
    return max(1.0, float(np.max(np.abs(array))))


def complex_to_pair(value: complex) -> List[float]:
    """Encode a complex number as ``[re, im]`` for JSON output."""
    value = complex(value)
    # adding 0.0 folds -0.0 into 0.0 so the printed form is stable
    return [float(value.real) + 0.0, float(value.imag) + 0.0]


def pair_to_complex(pair: Any) -> complex:
    """Decode ``[re, im]``, a bare number, or a numeric string into a complex."""
    if isinstance(pair, (list, tuple)):
        if len(pair) != 2:
            raise ValidationError(f"complex pair must have two entries, got {pair!r}", "value")
        return complex(float(pair[0]), float(pair[1]))
    if isinstance(pair, (int, float, complex)):
        return complex(pair)
    if isinstance(pair, str):
        try:
            return complex(pair.replace(" ", "").replace("i", "j"))
        except ValueError:
            raise ValidationError(f"cannot parse complex value {pair!r}", "value")
    raise ValidationError(f"cannot parse complex value {pair!r}", "value")
