"""Majorization check driving port (primary interface)."""

from abc import ABC, abstractmethod
from typing import Optional, Sequence

from ...entities.polynomial import RootSet
from ...entities.reports import CriticalPointResult, MajorizationReport, PhiTransform


class MajorizationCheckPort(ABC):
    """Primary port for weak majorization results on critical points."""

    @abstractmethod
    def weak_majorizes(self, a: Sequence[float], b: Sequence[float], tol: float) -> MajorizationReport:
        """Whether b weakly majorizes a.

        Args:
            a: Left vector
            b: Right vector of the same length
            tol: Slack tolerance, multiplied by max(1, max |a|, max |b|)

        Returns:
            Report with both vectors sorted descending and the prefix slacks

        Raises:
            ValidationError: If the lengths differ
        """
        pass

    @abstractmethod
    def kyfan_check(
        self, roots: RootSet, critical: Optional[CriticalPointResult] = None
    ) -> MajorizationReport:
        """Re(w) weakly majorized by the eigenvalues of (C_{n-1} + C*_{n-1})/2."""
        pass

    @abstractmethod
    def thm12_check(
        self,
        roots: RootSet,
        phi: PhiTransform,
        critical: Optional[CriticalPointResult] = None,
    ) -> MajorizationReport:
        """Phi(|w|) weakly majorized by Phi(sqrt(eta)), eta the eigenvalues of A_{n-1}."""
        pass

    @abstractmethod
    def weyl_domination(self, roots: RootSet) -> bool:
        """sigma_i(C_{n-1}) <= sqrt(eta_i) for every i."""
        pass

    @abstractmethod
    def weyl_domination_report(self, roots: RootSet) -> MajorizationReport:
        """Pointwise Weyl slacks plus the rank-one structure of A_{n-1} - B."""
        pass

    @abstractmethod
    def thm13_check(self, positive_roots: RootSet, phi: PhiTransform) -> MajorizationReport:
        """Phi(xi) weakly majorized by Phi(sqrt(eta)) for positive real roots.

        Raises:
            ValidationError: If a root is not real and positive
        """
        pass
