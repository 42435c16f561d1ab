"""Differentiator driving port (primary interface)."""

from abc import ABC, abstractmethod
from typing import Optional, Tuple

from ...entities.circulant import Circulant
from ...entities.matrix import DenseMatrix
from ...entities.polynomial import MultisetMatching, Polynomial, RootSet
from ...entities.reports import CriticalPointResult


class DifferentiatorPort(ABC):
    """Primary port for critical points via the circulant submatrix.

    This port defines what the application offers for turning a root set
    into its critical points and for cross-checking that route.
    """

    @abstractmethod
    def critical_points(self, roots: RootSet) -> CriticalPointResult:
        """Eigenvalues of C_{n-1} for C = from_spectrum(roots).

        Args:
            roots: Root set of degree at least 2

        Returns:
            Critical points, the circulant used and the coefficient-route residual

        Raises:
            ValidationError: If the degree is below 2
            NumericalError: If the eigensolver fails
        """
        pass

    @abstractmethod
    def verify_derivative_identity(self, roots: RootSet) -> float:
        """Relative coefficient gap between n * det(zI - C_{n-1}) and p'.

        Args:
            roots: Root set of degree at least 2

        Returns:
            Norm-wise relative coefficient difference
        """
        pass

    @abstractmethod
    def b_matrices(self, circulant: Circulant) -> Tuple[DenseMatrix, DenseMatrix]:
        """B = C_{n-1} C*_{n-1} and B~ = C*_{n-1} C_{n-1} from closed-form entries.

        Args:
            circulant: Circulant with n >= 2

        Returns:
            Tuple (B, B~)
        """
        pass

    @abstractmethod
    def is_submatrix_normal(self, roots: RootSet, tol: Optional[float] = None) -> bool:
        """Whether C_{n-1} is normal.

        Args:
            roots: Root set of degree at least 2
            tol: Normality tolerance (profile default when None)

        Returns:
            True if ||C C* - C* C||_F <= tol * ||C||_F^2 for C = C_{n-1}
        """
        pass

    @abstractmethod
    def perturbed_char_poly(self, roots: RootSet, alpha: complex) -> Polynomial:
        """Characteristic polynomial of C with its (0, 0) entry replaced by c_0 - alpha.

        Args:
            roots: Root set of degree at least 1
            alpha: Perturbation

        Returns:
            Monic polynomial equal to p + (alpha/n) p'
        """
        pass

    @abstractmethod
    def roots_of(self, polynomial: Polynomial) -> RootSet:
        """Roots of a polynomial through the independent oracle.

        Args:
            polynomial: Polynomial of degree at least 1

        Returns:
            Canonically ordered roots
        """
        pass

    @abstractmethod
    def perturbation_residual(self, roots: RootSet, alpha: complex) -> float:
        """Relative coefficient gap between perturbed_char_poly and p + (alpha/n) p'."""
        pass

    @abstractmethod
    def oracle_distance(
        self, roots: RootSet, critical: Optional[CriticalPointResult] = None
    ) -> MultisetMatching:
        """Match the circulant critical points against oracle roots of p'.

        Args:
            roots: Root set of degree at least 2
            critical: Precomputed critical points of ``roots``

        Returns:
            Bottleneck matching with its largest pair distance
        """
        pass

    @abstractmethod
    def normality_equivalence(self, roots: RootSet) -> Tuple[bool, bool]:
        """Normality of C_{n-1} next to collinearity of the roots.

        Returns:
            Tuple (is_submatrix_normal, collinear); the two agree for every input
        """
        pass
