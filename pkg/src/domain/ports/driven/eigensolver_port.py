"""Eigensolver driven port (secondary interface)."""

from abc import ABC, abstractmethod

import numpy as np

from ...entities.matrix import DenseMatrix, Spectrum
from ...entities.polynomial import Polynomial


# Faddeev-LeVerrier is O(n^4) and loses accuracy quickly past this size.
CHAR_POLY_MAX_DIMENSION = 64


class EigenSolverPort(ABC):
    """Secondary port for the dense complex matrix kernel.

    This port defines the linear algebra the services need on the
    non-circulant submatrices.
    """

    @abstractmethod
    def eig_general(self, matrix: DenseMatrix, tol: float) -> Spectrum:
        """Eigenvalues of a general square matrix.

        Args:
            matrix: Square matrix
            tol: Relative deflation threshold

        Returns:
            Canonically ordered eigenvalues with a backward-error estimate

        Raises:
            ValidationError: If the matrix is not square
            ConvergenceError: If the iteration stalls
        """
        pass

    @abstractmethod
    def eig_hermitian(self, matrix: DenseMatrix, tol: float) -> np.ndarray:
        """Real eigenvalues of a self-adjoint matrix, descending.

        Args:
            matrix: Square matrix with ||M - M*||_F <= tol * ||M||_F
            tol: Self-adjointness tolerance

        Returns:
            Eigenvalues sorted descending

        Raises:
            ValidationError: If the matrix is not Hermitian within tol
            ConvergenceError: If the iteration stalls
        """
        pass

    @abstractmethod
    def singular_values(self, matrix: DenseMatrix) -> np.ndarray:
        """Singular values of a square matrix, descending.

        Args:
            matrix: Square matrix

        Returns:
            Nonnegative singular values sorted descending
        """
        pass

    @abstractmethod
    def char_poly(self, matrix: DenseMatrix) -> Polynomial:
        """Monic det(zI - M).

        Args:
            matrix: Square matrix of dimension at most CHAR_POLY_MAX_DIMENSION

        Returns:
            Monic characteristic polynomial

        Raises:
            ValidationError: If the matrix is too large or not square
        """
        pass
