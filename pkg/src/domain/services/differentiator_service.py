"""Differentiator service: critical points as eigenvalues of a circulant submatrix."""

import logging
from typing import Optional, Tuple

import numpy as np

from ..ports.driving.differentiator_port import DifferentiatorPort
from ..ports.driven.eigensolver_port import CHAR_POLY_MAX_DIMENSION, EigenSolverPort
from ..ports.driven.root_finder_port import RootFinderPort
from ..entities.base import ValidationError
from ..entities.circulant import Circulant
from ..entities.matrix import DenseMatrix
from ..entities.polynomial import (
    MultisetMatching,
    Polynomial,
    RootSet,
    are_collinear,
    match_multisets,
)
from ..entities.reports import CriticalPointResult
from ..entities.tolerances import ToleranceProfile


logger = logging.getLogger(__name__)


def require_degree(roots: RootSet, minimum: int) -> None:
    """Raise ValidationError when the root set is too small."""
    if len(roots) < minimum:
        raise ValidationError(f"degree must be at least {minimum}, got {len(roots)}", "roots")


class DifferentiatorService(DifferentiatorPort):
    """Domain service implementing DifferentiatorPort.

    For p with roots lambda_j and C = from_spectrum(lambda), the critical
    points of p are the eigenvalues of the leading (n-1) x (n-1) block of
    C, and p'(z) = n * det(zI - C_{n-1}).
    """

    def __init__(
        self,
        eigensolver: EigenSolverPort,
        root_finder: RootFinderPort,
        tolerances: Optional[ToleranceProfile] = None,
    ):
        """Initialize the differentiator service.

        Args:
            eigensolver: Port for eigenvalues and characteristic polynomials
            root_finder: Independent root oracle
            tolerances: Threshold profile (defaults when None)
        """
        self._eigensolver = eigensolver
        self._root_finder = root_finder
        self._tolerances = tolerances or ToleranceProfile()

    @property
    def tolerances(self) -> ToleranceProfile:
        return self._tolerances

    def critical_points(self, roots: RootSet) -> CriticalPointResult:
        require_degree(roots, 2)
        circulant = Circulant.from_spectrum(roots)
        submatrix = circulant.leading_submatrix()
        spectrum = self._eigensolver.eig_general(submatrix, self._tolerances.eig_tol)

        if submatrix.n_rows <= CHAR_POLY_MAX_DIMENSION:
            residual = self._identity_residual(roots, submatrix)
        else:
            logger.warning(
                f"Degree {len(roots)} exceeds the characteristic polynomial limit; "
                "verification residual not computed"
            )
            residual = float("nan")

        return CriticalPointResult(
            critical_points=spectrum,
            circulant_used=circulant,
            verification_residual=residual,
        )

    def verify_derivative_identity(self, roots: RootSet) -> float:
        require_degree(roots, 2)
        submatrix = Circulant.from_spectrum(roots).leading_submatrix()
        return self._identity_residual(roots, submatrix)

    def _identity_residual(self, roots: RootSet, submatrix: DenseMatrix) -> float:
        derivative = Polynomial.from_roots(roots).derivative()
        char_poly = self._eigensolver.char_poly(submatrix)
        return char_poly.scaled(len(roots)).relative_difference(derivative)

    def b_matrices(self, circulant: Circulant) -> Tuple[DenseMatrix, DenseMatrix]:
        """Closed forms, 0-indexed with l, k in 0..n-2.

        b_lk = a_{k-l} - c_{n-1-l} conj(c_{n-1-k}) and
        b~_lk = a_{k-l} - c_{k+1} conj(c_{l+1}), a from gram(C).
        """
        n = circulant.n
        if n < 2:
            raise ValidationError("B matrices need n >= 2", "first_row")
        c = np.asarray(circulant.first_row)
        a = np.asarray(circulant.gram().first_row)
        index = np.arange(n - 1)
        gram_block = a[(index[None, :] - index[:, None]) % n]

        tail = c[n - 1 - index]
        head = c[index + 1]
        b = gram_block - np.outer(tail, np.conj(tail))
        b_tilde = gram_block - np.outer(np.conj(head), head)
        return DenseMatrix(b), DenseMatrix(b_tilde)

    def is_submatrix_normal(self, roots: RootSet, tol: Optional[float] = None) -> bool:
        require_degree(roots, 2)
        submatrix = Circulant.from_spectrum(roots).leading_submatrix()
        return submatrix.is_normal(self._tolerances.normality_tol if tol is None else tol)

    def perturbed_char_poly(self, roots: RootSet, alpha: complex) -> Polynomial:
        require_degree(roots, 1)
        circulant = Circulant.from_spectrum(roots)
        perturbed = circulant.to_dense().with_entry(0, 0, circulant.c0 - complex(alpha))
        return self._eigensolver.char_poly(perturbed)

    def perturbation_residual(self, roots: RootSet, alpha: complex) -> float:
        p = Polynomial.from_roots(roots)
        coeffs = np.array(p.coeffs)
        coeffs[:-1] += complex(alpha) / len(roots) * p.derivative().coeffs
        return self.perturbed_char_poly(roots, alpha).relative_difference(Polynomial(coeffs))

    def roots_of(self, polynomial: Polynomial) -> RootSet:
        return self._root_finder.find_roots(
            polynomial, self._tolerances.oracle_tol, self._tolerances.oracle_max_iter
        )

    def oracle_distance(
        self, roots: RootSet, critical: Optional[CriticalPointResult] = None
    ) -> MultisetMatching:
        result = critical or self.critical_points(roots)
        oracle = self.roots_of(Polynomial.from_roots(roots).derivative())
        matching = match_multisets(result.values, oracle, refine=True)
        logger.debug(f"Oracle distance {matching.max_distance:.3e} at degree {len(roots)}")
        return matching

    def normality_equivalence(self, roots: RootSet) -> Tuple[bool, bool]:
        normal = self.is_submatrix_normal(roots)
        collinear = are_collinear(roots, self._tolerances.collinearity_tol)
        if normal != collinear:
            logger.warning(f"Normality ({normal}) and collinearity ({collinear}) disagree")
        return normal, collinear
