"""Majorization service: weak majorization results for critical points."""

import logging
from typing import Optional, Sequence

import numpy as np

from ..ports.driving.differentiator_port import DifferentiatorPort
from ..ports.driving.majorization_check_port import MajorizationCheckPort
from ..ports.driven.eigensolver_port import EigenSolverPort
from ..entities.base import ValidationError, validate_same_length
from ..entities.circulant import Circulant
from ..entities.matrix import DenseMatrix
from ..entities.polynomial import RootSet, match_multisets
from ..entities.reports import CriticalPointResult, MajorizationReport, PhiTransform
from ..entities.tolerances import ToleranceProfile
from .differentiator_service import require_degree


logger = logging.getLogger(__name__)


class MajorizationService(MajorizationCheckPort):
    """Domain service implementing MajorizationCheckPort.

    eta denotes the eigenvalues of A_{n-1}, the leading block of A = CC*.
    They are the critical points of q(z) = prod (z - |lambda_j|^2).
    """

    def __init__(
        self,
        differentiator: DifferentiatorPort,
        eigensolver: EigenSolverPort,
        tolerances: Optional[ToleranceProfile] = None,
    ):
        """Initialize the majorization service.

        Args:
            differentiator: Port that produces critical points
            eigensolver: Port for Hermitian eigenvalues and singular values
            tolerances: Threshold profile (defaults when None)
        """
        self._differentiator = differentiator
        self._eigensolver = eigensolver
        self._tolerances = tolerances or ToleranceProfile()

    def weak_majorizes(self, a: Sequence[float], b: Sequence[float], tol: float) -> MajorizationReport:
        left = np.sort(np.asarray(a, dtype=float).ravel())[::-1]
        right = np.sort(np.asarray(b, dtype=float).ravel())[::-1]
        validate_same_length(left, right, "vectors")
        slacks = np.cumsum(right) - np.cumsum(left)
        scale = max([1.0] + [float(np.max(np.abs(v))) for v in (left, right) if v.size])
        threshold = tol * scale
        return MajorizationReport(
            left=left,
            right=right,
            prefix_slacks=slacks,
            holds=bool(np.all(slacks >= -threshold)),
            strong=bool(slacks.size == 0 or abs(slacks[-1]) <= threshold),
            tolerance=threshold,
        )

    def _eta(self, circulant: Circulant) -> np.ndarray:
        """Eigenvalues of A_{n-1}, descending, clamped at zero."""
        gram_block = circulant.gram().leading_submatrix()
        eta = self._eigensolver.eig_hermitian(gram_block, self._tolerances.hermitian_tol)
        return np.maximum(eta, 0.0)

    def kyfan_check(
        self, roots: RootSet, critical: Optional[CriticalPointResult] = None
    ) -> MajorizationReport:
        require_degree(roots, 2)
        result = critical or self._differentiator.critical_points(roots)
        hermitian = result.circulant_used.hermitian_part().leading_submatrix()
        right = self._eigensolver.eig_hermitian(hermitian, self._tolerances.hermitian_tol)

        # H is the normal circulant with spectrum Re(lambda), so its block
        # eigenvalues are the critical points of the real-part root set.
        real_parts = RootSet(roots.roots.real.astype(complex))
        xi = self._differentiator.critical_points(real_parts).values
        cross_check = match_multisets(right.astype(complex), xi, refine=True).max_distance
        if cross_check > self._tolerances.match_tol * roots.scale:
            logger.warning(f"Hermitian-part eigenvalues differ from real-part critical points by {cross_check:.3e}")

        report = self.weak_majorizes(result.values.real, right, self._tolerances.majorization_tol)
        return report.with_name("kyfan", {"cross_check": cross_check})

    def thm12_check(
        self,
        roots: RootSet,
        phi: PhiTransform,
        critical: Optional[CriticalPointResult] = None,
    ) -> MajorizationReport:
        require_degree(roots, 2)
        result = critical or self._differentiator.critical_points(roots)
        eta = self._eta(result.circulant_used)
        report = self.weak_majorizes(
            phi.apply(np.abs(result.values)),
            phi.apply(np.sqrt(eta)),
            self._tolerances.majorization_tol,
        )
        return report.with_name(f"thm12:{phi.label}")

    def weyl_domination(self, roots: RootSet) -> bool:
        return self.weyl_domination_report(roots).holds

    def weyl_domination_report(self, roots: RootSet) -> MajorizationReport:
        """Pointwise sigma_i^2 <= eta_i, plus the structure of A_{n-1} - B.

        ``left`` holds sigma_i^2 and ``right`` eta_i; ``prefix_slacks`` here
        are the pointwise gaps eta_i - sigma_i^2. Details report, relative
        to scale^2, the second singular value and smallest eigenvalue of
        D = A_{n-1} - C_{n-1} C*_{n-1} and the distance from D to v v*,
        v_l = c_{n-1-l}.
        """
        require_degree(roots, 2)
        circulant = Circulant.from_spectrum(roots)
        n = circulant.n
        submatrix = circulant.leading_submatrix()
        sigma_sq = self._eigensolver.singular_values(submatrix) ** 2
        eta = self._eta(circulant)
        scale_sq = roots.scale ** 2

        gaps = eta - sigma_sq
        threshold = self._tolerances.majorization_tol * scale_sq
        holds = bool(np.all(gaps >= -threshold))

        difference = circulant.gram().leading_submatrix().data - (submatrix @ submatrix.adjoint()).data
        difference = (difference + difference.conj().T) / 2.0
        spectrum = self._eigensolver.eig_hermitian(DenseMatrix(difference), self._tolerances.hermitian_tol)
        moduli = np.sort(np.abs(spectrum))[::-1]
        second = float(moduli[1]) if moduli.size > 1 else 0.0
        v = np.asarray(circulant.first_row)[n - 1 - np.arange(n - 1)]
        outer_residual = float(np.max(np.abs(difference - np.outer(v, np.conj(v)))))

        details = {
            "second_singular_value": second / scale_sq,
            "min_eigenvalue": float(spectrum[-1]) / scale_sq,
            "outer_product_residual": outer_residual / scale_sq,
            "min_gap": float(np.min(gaps)) / scale_sq,
        }
        rank_one_tol = self._tolerances.rank_one_tol
        if second / scale_sq > rank_one_tol or spectrum[-1] / scale_sq < -rank_one_tol:
            logger.warning(f"A_(n-1) - B is not rank-one PSD: {details}")

        return MajorizationReport(
            left=sigma_sq,
            right=eta,
            prefix_slacks=gaps,
            holds=holds,
            strong=False,
            name="weyl",
            tolerance=threshold,
            details=details,
        )

    def thm13_check(self, positive_roots: RootSet, phi: PhiTransform) -> MajorizationReport:
        require_degree(positive_roots, 2)
        values = positive_roots.roots
        if not positive_roots.is_real(self._tolerances.hermitian_tol) or np.any(values.real <= 0):
            raise ValidationError("all roots must be real and positive", "roots")

        xi = np.sort(self._differentiator.critical_points(positive_roots).values.real)[::-1]
        squares = RootSet(values.real.astype(complex) ** 2)
        eta = np.maximum(self._differentiator.critical_points(squares).values.real, 0.0)
        report = self.weak_majorizes(
            phi.apply(np.maximum(xi, 0.0)),
            phi.apply(np.sqrt(eta)),
            self._tolerances.majorization_tol,
        )
        return report.with_name(f"thm13:{phi.label}")
