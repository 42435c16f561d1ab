"""Dense complex matrix and spectrum value objects."""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, Tuple

import numpy as np

from .base import (
    ValidationError,
    ValueObject,
    complex_to_pair,
    frozen_array,
    pair_to_complex,
    scale_of,
    validate_finite,
)
from .polynomial import RootSet


@dataclass(frozen=True, eq=False)
class DenseMatrix(ValueObject):
    """General complex matrix backed by a read-only 2-D array."""

    data: Any

    def __post_init__(self):
        array = np.array(self.data, dtype=complex)
        if array.ndim == 0:
            array = array.reshape(1, 1)
        if array.ndim != 2 or array.shape[0] < 1 or array.shape[1] < 1:
            raise ValidationError("matrix must be a non-empty 2-D array", "data")
        validate_finite(array, "data")
        array.setflags(write=False)
        object.__setattr__(self, "data", array)

    @property
    def n_rows(self) -> int:
        return int(self.data.shape[0])

    @property
    def n_cols(self) -> int:
        return int(self.data.shape[1])

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def require_square(self) -> int:
        """Return the dimension, raising for non-square matrices."""
        if not self.is_square:
            raise ValidationError(
                f"square matrix required, got {self.n_rows}x{self.n_cols}", "data"
            )
        return self.n_rows

    def adjoint(self) -> "DenseMatrix":
        return DenseMatrix(self.data.conj().T)

    def matmul(self, other: "DenseMatrix") -> "DenseMatrix":
        if self.n_cols != other.n_rows:
            raise ValidationError(
                f"cannot multiply {self.n_rows}x{self.n_cols} by {other.n_rows}x{other.n_cols}",
                "data",
            )
        return DenseMatrix(self.data @ other.data)

    def __matmul__(self, other: "DenseMatrix") -> "DenseMatrix":
        return self.matmul(other)

    def __sub__(self, other: "DenseMatrix") -> "DenseMatrix":
        return DenseMatrix(self.data - other.data)

    def trace(self) -> complex:
        self.require_square()
        return complex(np.trace(self.data))

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.data, "fro"))

    def leading_block(self, size: int) -> "DenseMatrix":
        """Top-left ``size`` x ``size`` block."""
        if not 1 <= size <= min(self.n_rows, self.n_cols):
            raise ValidationError(f"block size {size} out of range", "size")
        return DenseMatrix(self.data[:size, :size])

    def with_entry(self, row: int, col: int, value: complex) -> "DenseMatrix":
        """Copy with one entry replaced."""
        array = np.array(self.data)
        array[row, col] = value
        return DenseMatrix(array)

    def schur_bound(self) -> float:
        """Tr(MM*) = sum of |m_ij|^2, the upper bound of sum |mu_j|^2."""
        self.require_square()
        return float(np.sum(np.abs(self.data) ** 2))

    def commutator_norm(self) -> float:
        """Frobenius norm of MM* - M*M."""
        self.require_square()
        adjoint = self.data.conj().T
        return float(np.linalg.norm(self.data @ adjoint - adjoint @ self.data, "fro"))

    def is_normal(self, tol: float) -> bool:
        """True iff ||MM* - M*M||_F <= tol * ||M||_F^2."""
        return self.commutator_norm() <= tol * self.frobenius_norm() ** 2

    def hermitian_defect(self) -> float:
        """||M - M*||_F relative to ||M||_F (0 for the zero matrix)."""
        self.require_square()
        norm = self.frobenius_norm()
        if norm == 0.0:
            return 0.0
        return float(np.linalg.norm(self.data - self.data.conj().T, "fro")) / norm

    def is_hermitian(self, tol: float) -> bool:
        return self.hermitian_defect() <= tol

    def allclose(self, other: "DenseMatrix", atol: float) -> bool:
        return self.data.shape == other.data.shape and bool(
            np.allclose(self.data, other.data, rtol=0.0, atol=atol)
        )

    @classmethod
    def identity(cls, n: int) -> "DenseMatrix":
        return cls(np.eye(n, dtype=complex))

    def to_dict(self) -> Dict[str, Any]:
        """Convert to the row-major ``{"rows", "cols", "entries"}`` JSON form."""
        return {
            "rows": self.n_rows,
            "cols": self.n_cols,
            "entries": [complex_to_pair(v) for v in self.data.ravel()],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DenseMatrix":
        """Create a matrix from its JSON form."""
        rows, cols = int(data["rows"]), int(data["cols"])
        entries = [pair_to_complex(v) for v in data["entries"]]
        if len(entries) != rows * cols:
            raise ValidationError(
                f"expected {rows * cols} entries, got {len(entries)}", "entries"
            )
        return cls(np.array(entries, dtype=complex).reshape(rows, cols))


@dataclass(frozen=True, eq=False)
class Spectrum(ValueObject):
    """Canonically ordered eigenvalues with a backward-error estimate."""

    values: Any
    residual: float = 0.0
    permutation: Tuple[int, ...] = field(init=False, default=())

    def __post_init__(self):
        ordered = RootSet(self.values)
        object.__setattr__(self, "values", ordered.roots)
        object.__setattr__(self, "permutation", ordered.permutation)
        object.__setattr__(self, "residual", float(self.residual))

    def __len__(self) -> int:
        return int(self.values.size)

    def __iter__(self) -> Iterator[complex]:
        return (complex(v) for v in self.values)

    @property
    def scale(self) -> float:
        return scale_of(self.values)

    def as_root_set(self) -> RootSet:
        return RootSet(self.values)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "values": [complex_to_pair(v) for v in self.values],
            "residual": self.residual,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Spectrum":
        return cls(
            [pair_to_complex(v) for v in data["values"]],
            residual=float(data.get("residual", 0.0)),
        )


def real_vector(values: Any) -> np.ndarray:
    """Read-only float copy of a real-valued vector."""
    return frozen_array(np.asarray(values, dtype=float), dtype=float)
