"""Companion-matrix root finder adapter backed by numpy."""

import numpy as np
from numpy.polynomial import polynomial as npoly

from ...domain.entities.base import NumericalError, ValidationError
from ...domain.entities.polynomial import Polynomial, RootSet
from ...domain.ports.driven.root_finder_port import RootFinderPort


class CompanionRootFinderAdapter(RootFinderPort):
    """Roots as eigenvalues of the companion matrix (LAPACK).

    ``tol`` and ``max_iter`` are accepted for port compatibility; LAPACK
    runs its own iteration.
    """

    def find_roots(self, polynomial: Polynomial, tol: float, max_iter: int) -> RootSet:
        if polynomial.degree < 1:
            raise ValidationError("constant polynomial", "coeffs")
        coeffs = np.array(polynomial.coeffs, dtype=complex) / polynomial.coeffs[-1]
        try:
            roots = npoly.polyroots(coeffs)
        except np.linalg.LinAlgError as e:
            raise NumericalError(f"companion eigenvalues failed: {e}")
        return RootSet(roots)
