"""Inequality service: bounds on the critical points from root data."""

import logging
from typing import Dict, Optional

import numpy as np

from ..ports.driving.differentiator_port import DifferentiatorPort
from ..ports.driving.inequality_check_port import InequalityCheckPort
from ..entities.base import NonCenteredError, ValidationError
from ..entities.circulant import Circulant
from ..entities.polynomial import RootSet, are_collinear
from ..entities.reports import (
    CriticalPointResult,
    InequalityName,
    InequalityReport,
    PowerSums,
)
from ..entities.tolerances import ToleranceProfile
from .differentiator_service import require_degree


logger = logging.getLogger(__name__)


def schoenberg_rhs(sums: PowerSums) -> float:
    n = sums.n
    return abs(sums.s1) ** 2 / n ** 2 + (n - 2) / n * sums.m2


def quartic_general_rhs(roots: RootSet, sums: PowerSums) -> float:
    """Five-term bound, with (1/n^2)|s2 - s1^2/n|^2 as the third term."""
    n = sums.n
    values = roots.roots
    mean = sums.s1 / n
    weighted = float(np.sum(np.abs(values) ** 2 * np.abs(values + mean) ** 2))
    return (
        (n - 6) / n * sums.m4
        + sums.m2 ** 2 / n ** 2
        + abs(sums.s2 - sums.s1 ** 2 / n) ** 2 / n ** 2
        + 2.0 / n * weighted
        - 4.0 / n ** 3 * sums.m2 * abs(sums.s1) ** 2
    )


def quartic_centered_rhs(sums: PowerSums) -> float:
    n = sums.n
    return (n - 4) / n * sums.m4 + sums.m2 ** 2 / n ** 2 + abs(sums.s2) ** 2 / n ** 2


def debruin_sharma_rhs(sums: PowerSums) -> float:
    n = sums.n
    return (n - 4) / n * sums.m4 + 2.0 * sums.m2 ** 2 / n ** 2


class InequalityService(InequalityCheckPort):
    """Domain service implementing InequalityCheckPort.

    Equality and pass thresholds scale with scale**order, where scale is
    max(1, max |lambda|) and order is the homogeneity degree of the bound.
    """

    def __init__(self, differentiator: DifferentiatorPort, tolerances: Optional[ToleranceProfile] = None):
        """Initialize the inequality service.

        Args:
            differentiator: Port that produces critical points
            tolerances: Threshold profile (defaults when None)
        """
        self._differentiator = differentiator
        self._tolerances = tolerances or ToleranceProfile()

    def power_sums(self, roots: RootSet) -> PowerSums:
        return PowerSums.of(roots)

    def _critical(self, roots: RootSet, critical: Optional[CriticalPointResult]) -> np.ndarray:
        require_degree(roots, 2)
        result = critical or self._differentiator.critical_points(roots)
        return result.values

    def _report(self, name: InequalityName, lhs: float, rhs: float, roots: RootSet) -> InequalityReport:
        weight = roots.scale ** name.order
        pass_tol = self._tolerances.pass_tolerance(name.order) * weight
        equality_tol = self._tolerances.equality_tolerance(name.order) * weight
        slack = rhs - lhs
        report = InequalityReport(
            name=name,
            lhs=float(lhs),
            rhs=float(rhs),
            slack=float(slack),
            equality=abs(slack) <= equality_tol,
            collinear=self.collinearity(roots),
            passed=slack >= -pass_tol,
            tolerance=pass_tol,
        )
        if not report.passed:
            logger.warning(f"{name.value} violated: lhs={lhs!r} rhs={rhs!r}")
        elif report.anomaly:
            logger.warning(f"{name.value}: equality without collinear roots (slack {slack:.3e})")
        return report

    def _require_centered(self, roots: RootSet, sums: PowerSums) -> None:
        tolerance = self._tolerances.centered_tol * roots.scale
        if abs(sums.s1) > tolerance:
            raise NonCenteredError(sums.s1, tolerance)

    def schoenberg_check(
        self, roots: RootSet, critical: Optional[CriticalPointResult] = None
    ) -> InequalityReport:
        w = self._critical(roots, critical)
        lhs = float(np.sum(np.abs(w) ** 2))
        return self._report(InequalityName.SCHOENBERG, lhs, schoenberg_rhs(self.power_sums(roots)), roots)

    def quartic_general_check(
        self, roots: RootSet, critical: Optional[CriticalPointResult] = None
    ) -> InequalityReport:
        w = self._critical(roots, critical)
        lhs = float(np.sum(np.abs(w) ** 4))
        rhs = quartic_general_rhs(roots, self.power_sums(roots))
        return self._report(InequalityName.QUARTIC_GENERAL, lhs, rhs, roots)

    def quartic_centered_check(
        self, roots: RootSet, critical: Optional[CriticalPointResult] = None
    ) -> InequalityReport:
        sums = self.power_sums(roots)
        self._require_centered(roots, sums)
        w = self._critical(roots, critical)
        lhs = float(np.sum(np.abs(w) ** 4))
        return self._report(InequalityName.QUARTIC_CENTERED, lhs, quartic_centered_rhs(sums), roots)

    def debruin_sharma_check(
        self, roots: RootSet, critical: Optional[CriticalPointResult] = None
    ) -> InequalityReport:
        sums = self.power_sums(roots)
        self._require_centered(roots, sums)
        w = self._critical(roots, critical)
        lhs = float(np.sum(np.abs(w) ** 4))
        rhs = debruin_sharma_rhs(sums)
        centered = quartic_centered_rhs(sums)
        if rhs < centered - self._tolerances.quartic_pass * roots.scale ** 4:
            logger.warning(f"de Bruin-Sharma bound {rhs!r} below the centered bound {centered!r}")
        return self._report(InequalityName.DEBRUIN_SHARMA, lhs, rhs, roots)

    def schur_check(
        self, roots: RootSet, critical: Optional[CriticalPointResult] = None
    ) -> InequalityReport:
        result = critical or self._differentiator.critical_points(roots)
        w = self._critical(roots, result)
        lhs = float(np.sum(np.abs(w) ** 2))
        rhs = result.circulant_used.leading_submatrix().schur_bound()
        return self._report(InequalityName.SCHUR, lhs, rhs, roots)

    def trace_bb(self, circulant: Circulant) -> float:
        n = circulant.n
        if n < 2:
            raise ValidationError("Tr(B B~) needs n >= 2", "first_row")
        c = np.asarray(circulant.first_row)
        a = np.asarray(circulant.gram().first_row)
        a0 = float(a[0].real)
        e0 = float(np.sum(np.abs(a) ** 2))
        k = np.arange(1, n)
        reflected = complex(np.sum(c[k] * c[n - k]))
        cross = complex(np.sum(a[k] * (c[0] * np.conj(c[k]) + np.conj(c[0]) * c[n - k])))
        value = (
            a0 ** 2
            + (n - 4) * e0
            + abs(reflected) ** 2
            + 2.0 * a0 * abs(c[0]) ** 2
            + 2.0 * cross
        )
        if abs(value.imag) > self._tolerances.identity_tol * max(1.0, abs(value.real)):
            logger.warning(f"Tr(B B~) has imaginary part {value.imag:.3e}")
        return float(value.real)

    def collinearity(self, roots: RootSet, tol: Optional[float] = None) -> bool:
        return are_collinear(roots, self._tolerances.collinearity_tol if tol is None else tol)

    def proof_identities(self, roots: RootSet) -> Dict[str, float]:
        require_degree(roots, 2)
        n = len(roots)
        sums = self.power_sums(roots)
        circulant = Circulant.from_spectrum(roots)
        c = np.asarray(circulant.first_row)
        scale = roots.scale
        k = np.arange(1, n)

        submatrix = circulant.leading_submatrix()
        b_dense = submatrix @ submatrix.adjoint()
        b_tilde_dense = submatrix.adjoint() @ submatrix
        b, b_tilde = self._differentiator.b_matrices(circulant)
        trace_formula = self.trace_bb(circulant)
        trace_dense = float((b_dense @ b_tilde_dense).trace().real)

        return {
            "sum_moduli_squared": abs(sums.m2 - n * float(np.sum(np.abs(c) ** 2))) / scale ** 2,
            "mean": abs(c[0] - sums.s1 / n) / scale,
            "reflected_products": abs(
                complex(np.sum(c[k] * c[n - k])) - (sums.s2 / n - sums.s1 ** 2 / n ** 2)
            ) / scale ** 2,
            "b_closed_form": max(
                float(np.max(np.abs(b.data - b_dense.data))),
                float(np.max(np.abs(b_tilde.data - b_tilde_dense.data))),
            ) / scale ** 2,
            "trace_bb_dense": abs(trace_formula - trace_dense) / scale ** 4,
            "quartic_rhs_trace": abs(quartic_general_rhs(roots, sums) - trace_formula) / scale ** 4,
        }
