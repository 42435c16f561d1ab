"""Circulant matrix value object and its spectral calculus.

A circulant is stored by its first row (c_0, ..., c_{n-1}); the dense matrix
has entry (k, l) = c_{(l - k) mod n}. Eigenvalues use omega = exp(2*pi*i/n)
with lambda_j = f(omega^j), f(x) = sum_k c_k x^k, j = 0..n-1 ("slot" order).
"""

from dataclasses import dataclass
from typing import Any, Dict, Union

import numpy as np

from .base import (
    ValidationError,
    ValueObject,
    complex_to_pair,
    frozen_array,
    pair_to_complex,
    validate_finite,
)
from .matrix import DenseMatrix
from .polynomial import RootSet


EPS = float(np.finfo(float).eps)
# Multiple of n * eps * max|lambda| below which a first-row component is rounding noise.
SNAP_FACTOR = 8.0


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


def fourier_matrix(n: int) -> np.ndarray:
    """Vandermonde matrix V[j, k] = omega^(j*k); its columns are eigenvectors."""
    exponents = np.outer(np.arange(n), np.arange(n)) % n
    return np.exp(2j * np.pi * exponents / n)


def vandermonde_gram_residual(n: int) -> float:
    """max |V V* - n I|, zero when the eigenvectors are orthogonal with norm sqrt(n)."""
    v = fourier_matrix(n)
    return float(np.max(np.abs(v @ v.conj().T - n * np.eye(n))))


def _forward(first_row: np.ndarray) -> np.ndarray:
    """lambda_j = sum_k c_k omega^(jk)."""
    n = first_row.size
    if _is_power_of_two(n):
        return n * np.fft.ifft(first_row)
    return fourier_matrix(n) @ first_row


def _inverse(eigenvalues: np.ndarray) -> np.ndarray:
    """c_k = (1/n) sum_j omega^(-jk) lambda_j, rounding noise snapped to zero."""
    n = eigenvalues.size
    if _is_power_of_two(n):
        row = np.fft.fft(eigenvalues) / n
    else:
        row = fourier_matrix(n).conj() @ eigenvalues / n
    return _snap_rounding(row, float(np.max(np.abs(eigenvalues))))


def _snap_rounding(row: np.ndarray, magnitude: float) -> np.ndarray:
    """Zero real and imaginary parts below SNAP_FACTOR * n * eps * magnitude.

    Keeps exactly structured spectra exact, e.g. the n-th roots of unity give
    the shift (0, 1, 0, ..., 0) whose leading submatrix is nilpotent.
    """
    threshold = SNAP_FACTOR * row.size * EPS * magnitude
    real = np.where(np.abs(row.real) <= threshold, 0.0, row.real)
    imag = np.where(np.abs(row.imag) <= threshold, 0.0, row.imag)
    return real + 1j * imag


@dataclass(frozen=True, eq=False)
class Circulant(ValueObject):
    """Circulant matrix given by its first row."""

    first_row: Any

    def __post_init__(self):
        row = np.array(self.first_row, dtype=complex).ravel()
        if row.size < 1:
            raise ValidationError("circulant needs at least one entry", "first_row")
        validate_finite(row, "first_row")
        object.__setattr__(self, "first_row", frozen_array(row))

    @property
    def n(self) -> int:
        return int(self.first_row.size)

    @property
    def c0(self) -> complex:
        return complex(self.first_row[0])

    def coefficient(self, k: int) -> complex:
        """c_{k mod n}."""
        return complex(self.first_row[k % self.n])

    @classmethod
    def identity(cls, n: int) -> "Circulant":
        row = np.zeros(n, dtype=complex)
        row[0] = 1.0
        return cls(row)

    @classmethod
    def shift(cls, n: int) -> "Circulant":
        """The cyclic shift (0, 1, 0, ..., 0)."""
        row = np.zeros(n, dtype=complex)
        row[1 % n] += 1.0
        return cls(row)

    @classmethod
    def from_spectrum(cls, roots: Union[RootSet, Any]) -> "Circulant":
        """The unique circulant with lambda_j in slot j for the canonical order."""
        values = roots.roots if isinstance(roots, RootSet) else RootSet(roots).roots
        return cls(_inverse(np.asarray(values, dtype=complex)))

    @classmethod
    def from_slot_eigenvalues(cls, eigenvalues: Any) -> "Circulant":
        """Circulant whose slot-j eigenvalue is ``eigenvalues[j]``, no reordering."""
        return cls(_inverse(np.asarray(eigenvalues, dtype=complex).ravel()))

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues in slot order f(omega^0), ..., f(omega^(n-1))."""
        return _forward(np.asarray(self.first_row))

    def spectrum(self) -> RootSet:
        """Canonically ordered eigenvalues; ``permutation`` maps back to slots."""
        return RootSet(self.eigenvalues())

    def _require_same_size(self, other: "Circulant") -> None:
        if other.n != self.n:
            raise ValidationError(f"size mismatch ({self.n} != {other.n})", "first_row")

    def multiply(self, other: "Circulant") -> "Circulant":
        """Circular convolution of first rows: (XY)_l = sum_m x_m y_{(l-m) mod n}."""
        self._require_same_size(other)
        full = np.convolve(self.first_row, other.first_row)
        row = np.array(full[:self.n])
        row[:full.size - self.n] += full[self.n:]
        return Circulant(row)

    def adjoint(self) -> "Circulant":
        """First row (conj c_0, conj c_{n-1}, ..., conj c_1)."""
        index = (-np.arange(self.n)) % self.n
        return Circulant(np.conj(self.first_row[index]))

    def gram(self) -> "Circulant":
        """A = CC* from the closed-form coefficients.

        a_0 = sum |c_j|^2 and
        a_k = sum_{j<k} c_j conj(c_{n-k+j}) + sum_{j<n-k} c_{k+j} conj(c_j).
        """
        c = np.asarray(self.first_row)
        n = self.n
        a = np.empty(n, dtype=complex)
        a[0] = np.sum(np.abs(c) ** 2)
        for k in range(1, n):
            head = np.sum(c[:k] * np.conj(c[n - k:]))
            tail = np.sum(c[k:] * np.conj(c[:n - k]))
            a[k] = head + tail
        return Circulant(a)

    def hermitian_part(self) -> "Circulant":
        """H = (C + C*)/2, eigenvalue Re(lambda_j) in slot j."""
        return Circulant((np.asarray(self.first_row) + self.adjoint().first_row) / 2.0)

    def reflection_defect(self) -> float:
        """max over k >= 1 of |c_{n-k} - conj(c_k)|."""
        c = np.asarray(self.first_row)
        mirrored = np.conj(c[(-np.arange(self.n)) % self.n])
        return float(np.max(np.abs(c[1:] - mirrored[1:]))) if self.n > 1 else 0.0

    def is_selfadjoint(self, tol: float) -> bool:
        """Reflection property: |Im c_0| <= tol and |c_{n-k} - conj(c_k)| <= tol * scale.

        scale is max(1, sum |c_k|), an upper bound on the spectral radius.
        """
        scale = max(1.0, float(np.sum(np.abs(self.first_row))))
        return abs(self.c0.imag) <= tol and self.reflection_defect() <= tol * scale

    def sqrt_gram(self) -> "Circulant":
        """The positive semidefinite root of CC*: slot-j eigenvalue |lambda_j|.

        For circulants built by ``from_spectrum`` this is ``from_spectrum``
        applied to the canonically ordered moduli.
        """
        return Circulant.from_slot_eigenvalues(np.abs(self.eigenvalues()))

    def to_dense(self) -> DenseMatrix:
        index = (np.arange(self.n)[None, :] - np.arange(self.n)[:, None]) % self.n
        return DenseMatrix(np.asarray(self.first_row)[index])

    def leading_submatrix(self) -> DenseMatrix:
        """C_{n-1}: the first n-1 rows and columns."""
        if self.n < 2:
            raise ValidationError("leading submatrix needs n >= 2", "first_row")
        return self.to_dense().leading_block(self.n - 1)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to the ``{"first_row": [[re, im], ...]}`` JSON form."""
        return {"first_row": [complex_to_pair(c) for c in self.first_row]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Circulant":
        if "first_row" not in data:
            raise ValidationError("circulant JSON needs a 'first_row' key", "first_row")
        return cls([pair_to_complex(v) for v in data["first_row"]])
